use std::collections::HashMap;

use rayon::prelude::*;

use crate::coverable::oracle::OracleMap;
use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::instance::{Constraint, ConstraintId, EdgeLabeling, Instance};
use crate::solver::{find_general_augmenting_walk, optimize_unchecked, NoopObserver};
use crate::walks::walk::apply_unchecked;
use crate::walks::{is_augmenting, Walk};

fn check_valid(instance: &Instance, f: &EdgeLabeling) -> Result<()> {
    instance.check_labeling(f)?;
    match instance.first_violation(f) {
        Some(c) => Err(Error::InvalidLabeling(instance.constraint(c).name.clone())),
        None => Ok(()),
    }
}

fn restricted(instance: &Instance, c: ConstraintId, c_prime: &Relation, covers: &[Relation]) -> Result<Instance> {
    let constraints = instance
        .constraint_ids()
        .map(|d| {
            let con = instance.constraint(d);
            let relation = if d == c { c_prime.clone() } else { covers[d.0].clone() };
            Constraint { name: con.name.clone(), scope: con.scope.clone(), relation }
        })
        .collect();
    Instance::new(instance.var_names().to_vec(), constraints)
}

/// `I(f, C, C′)`: `C` gets the relation `C′ ⊆ C`, every other constraint
/// `D` gets its cover at `f(D)`. Covers are taken from the oracles as is.
pub fn build_restricted_instance(
    instance: &Instance,
    f: &EdgeLabeling,
    c: ConstraintId,
    c_prime: &Relation,
    oracles: &OracleMap,
) -> Result<Instance> {
    check_valid(instance, f)?;
    if c_prime.is_empty() || !c_prime.is_subset(instance.relation(c)) {
        return Err(Error::InvalidInstance(format!(
            "replacement for {} must be a nonempty subset of it",
            instance.constraint(c).name
        )));
    }
    let covers = instance
        .constraint_ids()
        .map(|d| if d == c { Ok(c_prime.clone()) } else { oracles.cover(instance, d, f.tuple(d)) })
        .collect::<Result<Vec<_>>>()?;
    restricted(instance, c, c_prime, &covers)
}

/// An augmenting f-walk of `instance`, from a labeling `g` of
/// `I(f, C, {α})` with fewer inconsistencies than `f`.
pub fn lift_general(
    instance: &Instance,
    f: &EdgeLabeling,
    c: ConstraintId,
    alpha: &Tuple,
    g: &EdgeLabeling,
    oracles: &OracleMap,
) -> Result<Walk> {
    if !instance.relation(c).has(alpha) {
        return Err(Error::NotAMember { tuple: alpha.to_bit_string() });
    }
    let wide = build_restricted_instance(instance, f, c, instance.relation(c), oracles)?;
    let q = find_general_augmenting_walk(&wide, f, g)?;
    lift_walk(instance, f, &q)
}

/// The shortest prefix of `q` ending in a constraint that augments in
/// `instance`, or `q` itself.
fn lift_walk(instance: &Instance, f: &EdgeLabeling, q: &Walk) -> Result<Walk> {
    for i in 0..q.constraints().len() {
        let mut p = q.prefix(i);
        p.push_tail(q.constraints()[i]);
        if is_augmenting(instance, f, &p) {
            return Ok(p);
        }
    }
    if is_augmenting(instance, f, q) {
        return Ok(q.clone());
    }
    Err(Error::Internal(format!(
        "no prefix of {} augments the original instance; is every cover valid?",
        q.display(instance)
    )))
}

/// Options for [`solve_coverable_with`].
#[derive(Clone, Copy, Debug)]
pub struct CoverableOptions {
    /// Check every cover the solver uses with [`verify_cover`](crate::coverable::verify_cover).
    /// When off, covers are still required to be even Δ-matroids.
    pub strict: bool,
}

impl Default for CoverableOptions {
    fn default() -> Self {
        CoverableOptions { strict: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverableSolution {
    pub labeling: EdgeLabeling,
    pub count: usize,
    /// Improving walks applied.
    pub improvements: usize,
}

struct Covers<'a> {
    instance: &'a Instance,
    oracles: &'a OracleMap,
    strict: bool,
    cache: HashMap<(ConstraintId, Tuple), Relation>,
}

impl Covers<'_> {
    fn get(&mut self, c: ConstraintId, alpha: &Tuple) -> Result<Relation> {
        if let Some(r) = self.cache.get(&(c, alpha.clone())) {
            return Ok(r.clone());
        }
        let cover = if self.strict {
            self.oracles.verified_cover(self.instance, c, alpha)?
        } else {
            let cover = self.oracles.cover(self.instance, c, alpha)?;
            if !cover.is_even_delta_matroid() {
                return Err(Error::CoverRejected {
                    constraint: self.instance.constraint(c).name.clone(),
                    alpha: alpha.to_bit_string(),
                    violation: "the cover is not an even Δ-matroid".into(),
                });
            }
            cover
        };
        self.cache.insert((c, alpha.clone()), cover.clone());
        Ok(cover)
    }
}

/// Optimal labeling of an instance whose constraints all have cover
/// oracles, starting from [`Instance::initial_labeling`].
pub fn solve_coverable(instance: &Instance, oracles: &OracleMap) -> Result<CoverableSolution> {
    solve_coverable_with(instance, oracles, instance.initial_labeling(), CoverableOptions::default())
}

/// [`solve_coverable`] from a given valid labeling.
///
/// Each round tries every pair `(C, α)` with `α ∈ C` in canonical order,
/// in parallel, and applies the walk lifted from the first pair whose
/// restricted instance beats the current count.
pub fn solve_coverable_with(
    instance: &Instance,
    oracles: &OracleMap,
    mut f: EdgeLabeling,
    options: CoverableOptions,
) -> Result<CoverableSolution> {
    check_valid(instance, &f)?;
    for c in instance.constraints() {
        if !c.relation.is_delta_matroid()? {
            return Err(Error::InvalidInstance(format!("constraint {} is not a Δ-matroid", c.name)));
        }
    }
    let mut covers = Covers { instance, oracles, strict: options.strict, cache: HashMap::new() };
    let mut improvements = 0;
    loop {
        let count = instance.inconsistency_count(&f);
        if count == 0 {
            break;
        }
        let at_f = instance.constraint_ids().map(|d| covers.get(d, f.tuple(d))).collect::<Result<Vec<_>>>()?;
        let candidates: Vec<(ConstraintId, &Tuple)> =
            instance.constraint_ids().flat_map(|c| instance.relation(c).iter().map(move |a| (c, a))).collect();
        let found = candidates.par_iter().find_map_first(|&(c, alpha)| {
            let single = Relation::new(alpha.len(), [alpha.clone()]).expect("one tuple");
            let attempt = restricted(instance, c, &single, &at_f).and_then(|j| {
                let best = optimize_unchecked(&j, j.initial_labeling(), &mut NoopObserver)?;
                Ok((best.count < count).then_some(best.labeling))
            });
            match attempt {
                Ok(None) => None,
                Ok(Some(g)) => Some(Ok((c, alpha.clone(), g))),
                Err(e) => Some(Err(e)),
            }
        });
        let Some(found) = found else { break };
        let (c, alpha, g) = found?;
        let p = lift_general(instance, &f, c, &alpha, &g, oracles)?;
        let next = apply_unchecked(instance, &f, &p);
        if !instance.is_valid(&next) || instance.inconsistency_count(&next) >= count {
            return Err(Error::Internal(format!("lifted walk {} does not improve", p.display(instance))));
        }
        f = next;
        improvements += 1;
    }
    Ok(CoverableSolution { count: instance.inconsistency_count(&f), labeling: f, improvements })
}
