use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};

/// Largest arity for which class membership is decided by enumerating
/// all of `{0,1}^n`.
pub const MAX_ENUMERATION_ARITY: usize = 20;

fn all_tuples(n: usize) -> Result<impl Iterator<Item = Tuple>> {
    if n > MAX_ENUMERATION_ARITY {
        return Err(Error::ArityOutOfRange { arity: n, max: MAX_ENUMERATION_ARITY });
    }
    Ok((0..1u64 << n).map(move |i| Tuple::from_index(i, n)))
}

fn member(m: &Relation, alpha: &Tuple) -> Result<()> {
    if m.contains(alpha)? {
        Ok(())
    } else {
        Err(Error::NotAMember { tuple: alpha.to_bit_string() })
    }
}

/// Every non-member has all of its single flips inside `m`.
pub fn is_coindependent(m: &Relation) -> Result<bool> {
    if m.is_empty() {
        return Ok(false);
    }
    let n = m.arity();
    for t in all_tuples(n)? {
        if !m.has(&t) && (0..n).any(|u| !m.has(&t.flipped(u))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The parity class of `α`.
pub fn cover_coindependent(m: &Relation, alpha: &Tuple) -> Result<Relation> {
    member(m, alpha)?;
    if !is_coindependent(m)? {
        return Err(Error::NotInCoverClass {
            class: "co-independent",
            reason: "some non-member has a single flip outside the relation".into(),
        });
    }
    Ok(Relation::parity_class(m.arity(), alpha.parity()))
}

/// A generalized counting function: every single flip moves the value by
/// one, and from any two tuples with different values each can step
/// towards the other inside their difference.
pub trait GcFunction: Send + Sync {
    fn value(&self, t: &Tuple) -> usize;

    /// Name used in instance files.
    fn name(&self) -> &str;
}

/// The number of ones.
#[derive(Clone, Copy, Debug, Default)]
pub struct OnesCount;

impl GcFunction for OnesCount {
    fn value(&self, t: &Tuple) -> usize {
        t.count_ones()
    }

    fn name(&self) -> &str {
        "ones"
    }
}

/// Spot checks of the two gc axioms. Exhaustive up to arity 6, sampled with a
/// fixed seed above that.
pub fn check_gc_axioms(gc: &dyn GcFunction, arity: usize) -> Result<()> {
    let bad = |reason: String| Err(Error::NotInCoverClass { class: "compact", reason });
    let probes: Vec<Tuple> = if arity <= 6 {
        all_tuples(arity)?.collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..256).map(|_| Tuple::from_bits((0..arity).map(|_| rng.gen::<bool>()))).collect()
    };
    for a in &probes {
        let fa = gc.value(a);
        if fa > arity {
            return bad(format!("{} evaluates to {fa} > {arity}", a.to_bit_string()));
        }
        for v in 0..arity {
            if gc.value(&a.flipped(v)).abs_diff(fa) != 1 {
                return bad(format!("flipping {v} in {} does not move the value by one", a.to_bit_string()));
            }
        }
    }
    let pairs: Box<dyn Iterator<Item = (&Tuple, &Tuple)>> = if arity <= 6 {
        Box::new(probes.iter().flat_map(|a| probes.iter().map(move |b| (a, b))))
    } else {
        Box::new(probes.iter().zip(probes.iter().skip(1)))
    };
    for (a, b) in pairs {
        let (fa, fb) = (gc.value(a), gc.value(b));
        if fa <= fb {
            continue;
        }
        let diff = a.diff(b);
        let down = diff.iter().any(|&u| gc.value(&a.flipped(u)) + 1 == fa);
        let up = diff.iter().any(|&v| gc.value(&b.flipped(v)) == fb + 1);
        if !(down && up) {
            return bad(format!("no exchange between {} and {}", a.to_bit_string(), b.to_bit_string()));
        }
    }
    Ok(())
}

/// No value strictly between the extremes is missing unless both of its
/// neighbors are present.
pub fn is_gap2_free(s: &BTreeSet<usize>) -> bool {
    let (Some(&lo), Some(&hi)) = (s.first(), s.last()) else { return true };
    (lo + 1..hi).all(|x| s.contains(&x) || (s.contains(&(x - 1)) && s.contains(&(x + 1))))
}

/// `{α : F(α) ∈ S}`.
pub fn compact_relation(arity: usize, gc: &dyn GcFunction, levels: &BTreeSet<usize>) -> Result<Relation> {
    Relation::new(arity, all_tuples(arity)?.filter(|t| levels.contains(&gc.value(t))))
}

/// Whether `m` is exactly `{α : F(α) ∈ S}` with `S` 2-gap free.
pub fn is_compact_like(m: &Relation, gc: &dyn GcFunction, levels: &BTreeSet<usize>) -> Result<bool> {
    if !is_gap2_free(levels) {
        return Ok(false);
    }
    Ok(all_tuples(m.arity())?.all(|t| m.has(&t) == levels.contains(&gc.value(&t))))
}

/// The cover listed from `m` itself: same-parity members, plus single flips
/// of the other parity whose value lies strictly between the extremes of
/// `S`.
pub fn cover_compact(m: &Relation, gc: &dyn GcFunction, levels: &BTreeSet<usize>, alpha: &Tuple) -> Result<Relation> {
    member(m, alpha)?;
    if !is_gap2_free(levels) {
        return Err(Error::NotInCoverClass { class: "compact", reason: "the level set has a 2-gap".into() });
    }
    check_gc_axioms(gc, m.arity())?;
    if !is_compact_like(m, gc, levels)? {
        return Err(Error::NotInCoverClass {
            class: "compact",
            reason: "membership does not match the level set".into(),
        });
    }
    let (lo, hi) = (*levels.first().expect("nonempty"), *levels.last().expect("nonempty"));
    let parity = alpha.parity();
    let mut out: Vec<Tuple> = m.iter().filter(|t| t.parity() == parity).cloned().collect();
    for b in m.iter().filter(|t| t.parity() != parity) {
        for v in 0..m.arity() {
            let g = b.flipped(v);
            let fg = gc.value(&g);
            if lo < fg && fg < hi {
                out.push(g);
            }
        }
    }
    Relation::new(m.arity(), out)
}

/// `Even(M)` or `Odd(M)`, whichever holds `α`.
pub fn cover_interference_free(m: &Relation, alpha: &Tuple) -> Result<Relation> {
    member(m, alpha)?;
    if m.contains_interference_minor() {
        return Err(Error::NotInCoverClass {
            class: "interference-free",
            reason: "the relation has an interference minor".into(),
        });
    }
    Ok(if alpha.parity() { m.odd_part() } else { m.even_part() })
}
