//! The blossom algorithm for edge CSPs with even Δ-matroid constraints.
//!
//! [`improve`] grows a forest from the inconsistent variables and either
//! finds an augmenting walk, contracts a blossom and recurses on the smaller
//! instance, or proves the labeling optimal. [`optimize`] repeats it.
//!
//! ```
//! use edgecsp::{solver, Instance};
//!
//! // A triangle where every node must be matched exactly once.
//! let k3 = Instance::from_json(r#"{"variables":["ab","bc","ca"],"constraints":[
//!     {"id":"a","scope":["ab","ca"],"tuples":["10","01"]},
//!     {"id":"b","scope":["ab","bc"],"tuples":["10","01"]},
//!     {"id":"c","scope":["bc","ca"],"tuples":["10","01"]}]}"#)?;
//! assert_eq!(solver::optimize(&k3)?.count, 1);
//! # Ok::<(), edgecsp::Error>(())
//! ```

mod augment;
mod blossom;
mod contract;
mod forest;
mod lift;
mod observer;

pub use augment::{find_augmenting_walk, find_general_augmenting_walk};
pub use blossom::BlossomData;
pub use contract::{contract, ContractionRecord};
pub use forest::Forest;
pub use lift::lift_improvement;
pub use observer::{NoopObserver, SolverObserver, Stats, Tee, Trace};

use crate::error::{Error, Result};
use crate::instance::{EdgeLabeling, Instance};
use crate::walks::walk::apply_unchecked;
use crate::walks::Walk;

/// Result of one improvement pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A valid labeling with fewer inconsistencies.
    Improved(EdgeLabeling),
    /// No valid labeling has fewer inconsistencies.
    Optimal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub labeling: EdgeLabeling,
    pub count: usize,
    pub stats: Stats,
}

enum Growth {
    Augmented(EdgeLabeling),
    Optimal,
    Blossom(EdgeLabeling, BlossomData),
}

fn grow<O: SolverObserver>(instance: &Instance, f: &EdgeLabeling, obs: &mut O, depth: usize) -> Result<Growth> {
    let mut forest = Forest::new(instance, &instance.inconsistent_vars(f));
    obs.forest_changed(instance, f, &forest);
    let mut time = 1;
    while let Some((v, c)) = forest.next_frontier(instance) {
        let node = forest.add_constraint(instance, v, c, time);
        obs.expanded(instance, v, c, time, depth);
        obs.forest_changed(instance, f, &forest);

        // f is not touched while the forest grows, so this is the tuple C
        // had when the forest started.
        let con = instance.constraint(c);
        let pv = instance.position(v, c).expect("frontier half-edge");
        let ft = f.tuple(c);
        let targets: Vec<_> = (0..con.scope.len())
            .filter(|&p| p != pv && con.relation.has(&ft.flipped2(pv, p)))
            .map(|p| con.scope[p])
            .collect();
        for w in targets {
            if !forest.contains(w) {
                forest.add_child(instance, node, w);
                obs.forest_changed(instance, f, &forest);
                continue;
            }
            if forest.parent_of(w).is_some_and(|n| forest.cnode(n).constraint == c) {
                continue;
            }
            if forest.is_used(instance, w, c) {
                return Err(Error::Internal(format!(
                    "{} already enters {}",
                    instance.var_name(w),
                    con.name
                )));
            }
            obs.terminal_dag(instance, f, &forest.terminal_dag(node, w));
            if forest.root_of(v) != forest.root_of(w) {
                let (mut vars, cnodes) = forest.path_to(v);
                let mut cons: Vec<_> = cnodes.iter().map(|&n| forest.cnode(n).constraint).collect();
                cons.push(c);
                let (w_vars, w_nodes) = forest.path_to(w);
                vars.extend(w_vars.iter().rev());
                cons.extend(w_nodes.iter().rev().map(|&n| forest.cnode(n).constraint));
                let p = Walk::from_parts_unchecked(vars, cons);
                let g = apply_unchecked(instance, f, &p);
                if instance.first_violation(&g).is_some()
                    || instance.inconsistency_count(&g) + 2 != instance.inconsistency_count(f)
                {
                    return Err(Error::Internal(format!("augmenting walk {} failed", p.display(instance))));
                }
                obs.augmented(instance, &g, &p, depth);
                return Ok(Growth::Augmented(g));
            }
            let (stemmed, b) = blossom::extract_blossom(instance, &forest, f, v, node, w)?;
            obs.blossom(instance, &stemmed, &b, depth);
            return Ok(Growth::Blossom(stemmed, b));
        }
        time += 1;
    }
    Ok(Growth::Optimal)
}

fn check_valid(instance: &Instance, f: &EdgeLabeling) -> Result<()> {
    instance.check_labeling(f)?;
    match instance.first_violation(f) {
        Some(c) => Err(Error::InvalidLabeling(instance.constraint(c).name.clone())),
        None => Ok(()),
    }
}

/// One pass of the blossom algorithm on a valid labeling `f`.
///
/// Constraints are expected to be even Δ-matroids; other constraints can
/// make the pass fail with [`Error::Internal`].
pub fn improve(instance: &Instance, f: &EdgeLabeling) -> Result<Outcome> {
    improve_with(instance, f, &mut NoopObserver)
}

/// [`improve`] reporting to an observer.
pub fn improve_with<O: SolverObserver>(instance: &Instance, f: &EdgeLabeling, obs: &mut O) -> Result<Outcome> {
    check_valid(instance, f)?;
    improve_unchecked(instance, f, obs)
}

fn improve_unchecked<O: SolverObserver>(instance: &Instance, f: &EdgeLabeling, obs: &mut O) -> Result<Outcome> {
    let mut stack: Vec<ContractionRecord> = Vec::new();
    let max_depth = 2 * instance.num_vars();
    let mut g = loop {
        let depth = stack.len();
        let (inst, lab) = match stack.last() {
            Some(r) => (&r.contracted, &r.f_contracted),
            None => (instance, f),
        };
        match grow(inst, lab, obs, depth)? {
            Growth::Optimal => {
                obs.optimal(inst, lab, depth);
                return Ok(Outcome::Optimal);
            }
            Growth::Augmented(g) => break g,
            Growth::Blossom(stemmed, b) => {
                let record = contract(inst, &stemmed, &b)?;
                if depth + 1 > max_depth {
                    return Err(Error::Internal(format!("more than {max_depth} nested contractions")));
                }
                obs.contracted(&record, depth + 1);
                stack.push(record);
            }
        }
    };
    while let Some(record) = stack.pop() {
        g = lift_improvement(&record, &g)?;
        obs.lifted(&record, &g, stack.len());
    }
    if instance.inconsistency_count(&g) + 2 != instance.inconsistency_count(f) {
        return Err(Error::Internal("improvement did not remove two inconsistencies".into()));
    }
    Ok(Outcome::Improved(g))
}

/// Finds an optimal labeling, starting from [`Instance::initial_labeling`].
///
/// Refuses instances with a constraint that is not an even Δ-matroid.
pub fn optimize(instance: &Instance) -> Result<Solution> {
    optimize_with(instance, instance.initial_labeling(), &mut NoopObserver)
}

/// [`optimize`] from a given valid labeling, reporting to an observer.
pub fn optimize_with<O: SolverObserver>(instance: &Instance, f: EdgeLabeling, obs: &mut O) -> Result<Solution> {
    for c in instance.constraints() {
        if !c.relation.is_even_delta_matroid() {
            return Err(Error::NotEvenDeltaMatroid(c.name.clone()));
        }
    }
    check_valid(instance, &f)?;
    optimize_unchecked(instance, f, obs)
}

pub(crate) fn optimize_unchecked<O: SolverObserver>(
    instance: &Instance,
    mut f: EdgeLabeling,
    obs: &mut O,
) -> Result<Solution> {
    let mut stats = Stats::default();
    let mut both = Tee(&mut stats, obs);
    while let Outcome::Improved(g) = improve_unchecked(instance, &f, &mut both)? {
        f = g;
    }
    Ok(Solution { count: instance.inconsistency_count(&f), labeling: f, stats })
}

#[cfg(test)]
mod tests;
