use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};

fn endpoints(m: &Relation, f: &Tuple, g: &Tuple) -> Result<Vec<usize>> {
    for t in [f, g] {
        if !m.contains(t)? {
            return Err(Error::NotAMember { tuple: t.to_bit_string() });
        }
    }
    let diff = f.diff(g);
    if diff.len() % 2 == 1 {
        return Err(Error::OddDifference(diff.len()));
    }
    Ok(diff)
}

fn admissible(m: &Relation, f: &Tuple, g: &Tuple, u: usize, v: usize) -> bool {
    m.has(&f.flipped2(u, v)) && m.has(&g.flipped2(u, v))
}

/// Pairs `{u, v}` of positions where `f` and `g` differ such that flipping
/// both keeps `f` and `g` inside `m`. Positions are zero-based, `u < v`.
pub fn admissible_pairs(m: &Relation, f: &Tuple, g: &Tuple) -> Result<Vec<(usize, usize)>> {
    let diff = endpoints(m, f, g)?;
    let mut out = Vec::new();
    for (i, &u) in diff.iter().enumerate() {
        for &v in &diff[i + 1..] {
            if admissible(m, f, g, u, v) {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}

/// A partition of the positions where `f` and `g` differ into admissible
/// pairs, or `None` when there is no such partition. Matching realizable
/// relations always have one.
pub fn check_pair_decomposition(m: &Relation, f: &Tuple, g: &Tuple) -> Result<Option<Vec<(usize, usize)>>> {
    fn go(m: &Relation, f: &Tuple, g: &Tuple, left: &mut Vec<usize>, out: &mut Vec<(usize, usize)>) -> bool {
        let Some(u) = left.pop() else { return true };
        for i in 0..left.len() {
            let v = left[i];
            if !admissible(m, f, g, u.min(v), u.max(v)) {
                continue;
            }
            left.remove(i);
            out.push((u.min(v), u.max(v)));
            if go(m, f, g, left, out) {
                return true;
            }
            out.pop();
            left.insert(i, v);
        }
        left.push(u);
        false
    }
    let mut left = endpoints(m, f, g)?;
    left.reverse();
    let mut out = Vec::new();
    Ok(go(m, f, g, &mut left, &mut out).then(|| {
        out.sort_unstable();
        out
    }))
}

/// An even Δ-matroid of arity 6 with no pair decomposition between
/// `000000` and `111111`, so it is not matching realizable.
pub fn counterexample_arity6() -> Relation {
    Relation::from_strs(&[
        "000000", //
        "100100", "011000", "001100", "001010", "000101", "001001", "010001", "100010", //
        "011011", "100111", "110011", "110101", "111010", "001111", "101101", "101011", "111100", //
        "111111",
    ])
    .expect("well-formed tuples")
}
