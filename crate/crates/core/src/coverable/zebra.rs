use std::collections::HashSet;

use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};

/// Default arity limit for [`even_zebra_cover_search`].
pub const DEFAULT_ZEBRA_ARITY: usize = 8;

/// Subsets of `{0,1}^n` for `n ≤ 8`, one bit per tuple index.
type Set = [u64; 4];

fn has(s: &Set, i: u64) -> bool {
    s[(i >> 6) as usize] >> (i & 63) & 1 == 1
}

fn insert(s: &mut Set, i: u64) {
    s[(i >> 6) as usize] |= 1 << (i & 63);
}

/// Searches for an even Δ-matroid `M_α` that holds every tuple of `m` with
/// the parity of `α` and satisfies the zebra condition: whenever
/// `β ⊕ u ⊕ v ∈ M_α ∖ M` for some `β ∈ M`, both `β ⊕ u` and `β ⊕ v` are in
/// `m`.
///
/// Returns `None` only after the search space is exhausted. Exponential in
/// the worst case; arities above `max_arity` (at most 8) are refused.
pub fn even_zebra_cover_search(m: &Relation, alpha: &Tuple, max_arity: usize) -> Result<Option<Relation>> {
    let n = m.arity();
    let limit = max_arity.min(DEFAULT_ZEBRA_ARITY);
    if n > limit {
        return Err(Error::ArityOutOfRange { arity: n, max: limit });
    }
    if !m.contains(alpha)? {
        return Err(Error::NotAMember { tuple: alpha.to_bit_string() });
    }
    let parity = alpha.parity();

    // Tuples outside M that the zebra condition rules out.
    let mut forbidden: Set = [0; 4];
    for b in m.iter().filter(|b| b.parity() == parity) {
        for u in 0..n {
            for v in u + 1..n {
                let d = b.flipped2(u, v);
                if !m.has(&d) && !(m.has(&b.flipped(u)) && m.has(&b.flipped(v))) {
                    insert(&mut forbidden, d.index());
                }
            }
        }
    }
    let mut start: Set = [0; 4];
    for b in m.iter().filter(|b| b.parity() == parity) {
        insert(&mut start, b.index());
    }

    // Depth-first over growing sets: a violated exchange in the current set
    // must be repaired by adding one of its candidates, so every even
    // Δ-matroid above the current set lies below some branch.
    let mut seen: HashSet<Set> = HashSet::new();
    let mut stack = vec![start];
    while let Some(set) = stack.pop() {
        if !seen.insert(set) {
            continue;
        }
        match first_violation(&set, n) {
            None => {
                let tuples = (0..1u64 << n).filter(|&i| has(&set, i)).map(|i| Tuple::from_index(i, n));
                return Ok(Some(Relation::new(n, tuples)?));
            }
            Some(candidates) => {
                for c in candidates.into_iter().rev() {
                    if !has(&forbidden, c) {
                        let mut next = set;
                        insert(&mut next, c);
                        stack.push(next);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The repair candidates `f ⊕ u ⊕ v` of the first broken exchange, or `None`
/// when the set is an even Δ-matroid.
fn first_violation(set: &Set, n: usize) -> Option<Vec<u64>> {
    let members: Vec<u64> = (0..1u64 << n).filter(|&i| has(set, i)).collect();
    for &f in &members {
        for &g in &members {
            let diff = f ^ g;
            for v in (0..n).filter(|&v| diff >> v & 1 == 1) {
                let candidates: Vec<u64> =
                    (0..n).filter(|&u| u != v && diff >> u & 1 == 1).map(|u| f ^ (1 << u) ^ (1 << v)).collect();
                if !candidates.iter().any(|&c| has(set, c)) {
                    return Some(candidates);
                }
            }
        }
    }
    None
}
