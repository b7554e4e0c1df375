use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::dmatroid::Tuple;
use crate::error::{Error, Result};
use crate::instance::{ConstraintId, EdgeLabeling, Instance};

/// Largest number of labelings the exhaustive solver agrees to look at.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForce {
    pub count: usize,
    pub witness: EdgeLabeling,
}

/// Constraint visiting order plus, for every step, the variables that close
/// at that step as `(position here, earlier step, position there)`.
struct Plan {
    order: Vec<usize>,
    closing: Vec<Vec<(usize, usize, usize)>>,
}

impl Plan {
    fn new(instance: &Instance) -> Plan {
        let m = instance.num_constraints();
        let mut order = Vec::with_capacity(m);
        let mut placed = vec![false; m];
        for start in 0..m {
            if placed[start] {
                continue;
            }
            placed[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                order.push(c);
                for &v in &instance.constraints()[c].scope {
                    let (d, _) = instance.other_end(v, ConstraintId(c));
                    if !placed[d.0] {
                        placed[d.0] = true;
                        queue.push_back(d.0);
                    }
                }
            }
        }
        let mut step_of = vec![0; m];
        for (i, &c) in order.iter().enumerate() {
            step_of[c] = i;
        }
        let closing = order
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let cid = ConstraintId(c);
                instance.constraints()[c]
                    .scope
                    .iter()
                    .enumerate()
                    .filter_map(|(p, &v)| {
                        let (d, q) = instance.other_end(v, cid);
                        (step_of[d.0] < i).then_some((p, step_of[d.0], q))
                    })
                    .collect()
            })
            .collect();
        Plan { order, closing }
    }

    fn cost(&self, step: usize, t: &Tuple, chosen: &[&Tuple]) -> usize {
        self.closing[step].iter().filter(|&&(p, s, q)| t.get(p) != chosen[s].get(q)).count()
    }

    fn labeling(&self, chosen: &[&Tuple]) -> EdgeLabeling {
        let mut tuples = vec![Tuple::zeros(0); chosen.len()];
        for (i, &c) in self.order.iter().enumerate() {
            tuples[c] = chosen[i].clone();
        }
        EdgeLabeling::from_tuples(tuples)
    }
}

fn check_bound(instance: &Instance, bound: u128) -> Result<()> {
    let needed = instance
        .constraints()
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.relation.len() as u128));
    if needed > bound {
        return Err(Error::BoundExceeded { needed, bound });
    }
    Ok(())
}

/// Exact optimum by enumerating one tuple per constraint, with the default
/// bound.
pub fn brute_force_optimum(instance: &Instance) -> Result<BruteForce> {
    brute_force_optimum_bounded(instance, DEFAULT_ENUMERATION_BOUND)
}

/// Exact optimum by branch and bound over one tuple per constraint.
///
/// Fails with [`Error::BoundExceeded`] when the product of relation sizes is
/// larger than `bound`. The witness does not depend on thread scheduling.
pub fn brute_force_optimum_bounded(instance: &Instance, bound: u128) -> Result<BruteForce> {
    check_bound(instance, bound)?;
    let plan = Plan::new(instance);
    let Some(&first) = plan.order.first() else {
        return Ok(BruteForce { count: 0, witness: EdgeLabeling::from_tuples(Vec::new()) });
    };
    let global = AtomicUsize::new(usize::MAX);
    let best = instance.relation(ConstraintId(first))
        .tuples()
        .par_iter()
        .enumerate()
        .map(|(branch, t)| {
            let mut search = Search { instance, plan: &plan, global: &global, best: usize::MAX, witness: None };
            let mut chosen = vec![t];
            search.descend(&mut chosen, 0);
            (search.best, branch, search.witness)
        })
        .min_by_key(|&(count, branch, _)| (count, branch))
        .expect("relations are nonempty");
    let witness = best.2.ok_or_else(|| Error::Internal("exhaustive search found no labeling".into()))?;
    Ok(BruteForce { count: best.0, witness })
}

struct Search<'a> {
    instance: &'a Instance,
    plan: &'a Plan,
    global: &'a AtomicUsize,
    best: usize,
    witness: Option<EdgeLabeling>,
}

impl<'a> Search<'a> {
    fn descend(&mut self, chosen: &mut Vec<&'a Tuple>, cost: usize) {
        let step = chosen.len();
        if step == self.plan.order.len() {
            self.best = cost;
            self.witness = Some(self.plan.labeling(chosen));
            self.global.fetch_min(cost, Ordering::Relaxed);
            return;
        }
        let c = ConstraintId(self.plan.order[step]);
        for t in self.instance.relation(c).tuples() {
            let next = cost + self.plan.cost(step, t, chosen);
            // Other branches only prune what cannot tie their optimum, so the
            // smallest branch index reaching the minimum stays exact.
            if next >= self.best || next > self.global.load(Ordering::Relaxed) {
                continue;
            }
            chosen.push(t);
            self.descend(chosen, next);
            chosen.pop();
            if self.best == 0 {
                return;
            }
        }
    }
}

/// Calls `visit` on every valid labeling, in lexicographic order of tuple
/// choices by constraint id.
pub fn for_each_valid_labeling<F>(instance: &Instance, bound: u128, mut visit: F) -> Result<()>
where
    F: FnMut(&EdgeLabeling),
{
    check_bound(instance, bound)?;
    let m = instance.num_constraints();
    let mut f = instance.initial_labeling();
    let mut idx = vec![0usize; m];
    loop {
        visit(&f);
        let mut c = 0;
        loop {
            if c == m {
                return Ok(());
            }
            let rel = instance.relation(ConstraintId(c));
            idx[c] += 1;
            if idx[c] < rel.len() {
                f.set_tuple(ConstraintId(c), rel.tuples()[idx[c]].clone());
                break;
            }
            idx[c] = 0;
            f.set_tuple(ConstraintId(c), rel.tuples()[0].clone());
            c += 1;
        }
    }
}
