use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{ConstraintId, EdgeLabeling, HalfEdge, Instance, VarId};

/// A walk `q0 C1 q1 … Ck qk`, or with an open tail `q0 C1 … Ck` that ends in
/// a constraint.
///
/// Every half-edge is traversed at most once, which also means a variable
/// shows up at most once except for `q0 = qk`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    vars: Vec<VarId>,
    constraints: Vec<ConstraintId>,
}

impl Walk {
    /// The length-0 walk at `v`.
    pub fn trivial(v: VarId) -> Walk {
        Walk { vars: vec![v], constraints: Vec::new() }
    }

    /// Builds a walk, checking it against `instance`.
    ///
    /// With `vars.len() == constraints.len() + 1` the walk ends in a
    /// variable; with equal lengths it ends in the last constraint.
    pub fn new(instance: &Instance, vars: Vec<VarId>, constraints: Vec<ConstraintId>) -> Result<Walk> {
        let w = Walk { vars, constraints };
        w.check(instance)?;
        Ok(w)
    }

    pub(crate) fn from_parts_unchecked(vars: Vec<VarId>, constraints: Vec<ConstraintId>) -> Walk {
        debug_assert!(vars.len() == constraints.len() + 1 || (!vars.is_empty() && vars.len() == constraints.len()));
        Walk { vars, constraints }
    }

    /// Checks the shape and that every half-edge occurs once.
    pub fn check(&self, instance: &Instance) -> Result<()> {
        if self.vars.is_empty() {
            return Err(Error::InvalidWalk("a walk starts at a variable".into()));
        }
        if self.vars.len() != self.constraints.len() + 1 && self.vars.len() != self.constraints.len() {
            return Err(Error::InvalidWalk(format!(
                "{} variables do not alternate with {} constraints",
                self.vars.len(),
                self.constraints.len()
            )));
        }
        if let Some(v) = self.vars.iter().find(|v| v.0 >= instance.num_vars()) {
            return Err(Error::InvalidWalk(format!("unknown variable {}", v.0)));
        }
        if let Some(c) = self.constraints.iter().find(|c| c.0 >= instance.num_constraints()) {
            return Err(Error::InvalidWalk(format!("unknown constraint {}", c.0)));
        }
        let mut seen = HashSet::new();
        for h in self.half_edges() {
            if instance.position(h.var, h.constraint).is_none() {
                return Err(Error::InvalidWalk(format!(
                    "{} is not in the scope of {}",
                    instance.var_name(h.var),
                    instance.constraint(h.constraint).name
                )));
            }
            if !seen.insert(h) {
                return Err(Error::InvalidWalk(format!(
                    "half-edge {}@{} traversed twice",
                    instance.var_name(h.var),
                    instance.constraint(h.constraint).name
                )));
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn constraints(&self) -> &[ConstraintId] {
        &self.constraints
    }

    pub fn start(&self) -> VarId {
        self.vars[0]
    }

    /// Last variable, or `None` when the walk ends in a constraint.
    pub fn end(&self) -> Option<VarId> {
        if self.is_half_integral() {
            None
        } else {
            self.vars.last().copied()
        }
    }

    /// The last variable visited, also for walks ending in a constraint.
    pub fn last_var(&self) -> VarId {
        *self.vars.last().expect("walks are nonempty")
    }

    /// Number of constraints visited.
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn is_half_integral(&self) -> bool {
        self.vars.len() == self.constraints.len()
    }

    /// Half-edges in traversal order.
    pub fn half_edges(&self) -> Vec<HalfEdge> {
        let mut out = Vec::with_capacity(2 * self.constraints.len());
        for (i, &c) in self.constraints.iter().enumerate() {
            out.push(HalfEdge { var: self.vars[i], constraint: c });
            if let Some(&w) = self.vars.get(i + 1) {
                out.push(HalfEdge { var: w, constraint: c });
            }
        }
        out
    }

    /// Appends `C w`. The walk must end in a variable.
    pub fn push(&mut self, c: ConstraintId, w: VarId) {
        assert!(!self.is_half_integral(), "walk already ends in a constraint");
        self.constraints.push(c);
        self.vars.push(w);
    }

    /// Appends a final constraint, leaving an open tail.
    pub fn push_tail(&mut self, c: ConstraintId) {
        assert!(!self.is_half_integral(), "walk already ends in a constraint");
        self.constraints.push(c);
    }

    /// The subwalk `q_i C_{i+1} … C_j q_j`.
    pub fn subwalk(&self, i: usize, j: usize) -> Walk {
        assert!(i <= j && j < self.vars.len() && j <= self.constraints.len());
        Walk { vars: self.vars[i..=j].to_vec(), constraints: self.constraints[i..j].to_vec() }
    }

    /// The prefix ending at `q_i`.
    pub fn prefix(&self, i: usize) -> Walk {
        self.subwalk(0, i)
    }

    /// `q^-1`. Only walks ending in a variable can be reversed.
    pub fn reversed(&self) -> Walk {
        assert!(!self.is_half_integral(), "cannot reverse a walk ending in a constraint");
        let mut vars = self.vars.clone();
        let mut constraints = self.constraints.clone();
        vars.reverse();
        constraints.reverse();
        Walk { vars, constraints }
    }

    /// `pq`, where `q` starts at the last variable of `self`.
    pub fn concat(&self, other: &Walk) -> Walk {
        assert_eq!(self.end(), Some(other.start()), "walks do not meet");
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars[1..]);
        let mut constraints = self.constraints.clone();
        constraints.extend_from_slice(&other.constraints);
        Walk { vars, constraints }
    }

    /// Renders `v0 -C1- v1 -C2- …` with the instance's names.
    pub fn display(&self, instance: &Instance) -> String {
        let mut s = instance.var_name(self.vars[0]).to_string();
        for (i, &c) in self.constraints.iter().enumerate() {
            s.push_str(&format!(" -{}-", instance.constraint(c).name));
            if let Some(&w) = self.vars.get(i + 1) {
                s.push_str(&format!(" {}", instance.var_name(w)));
            }
        }
        s
    }
}

impl fmt::Debug for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.vars[0].0)?;
        for (i, c) in self.constraints.iter().enumerate() {
            write!(f, " -C{}-", c.0)?;
            if let Some(w) = self.vars.get(i + 1) {
                write!(f, " v{}", w.0)?;
            }
        }
        Ok(())
    }
}

/// `f ⊕ q`: flips every half-edge the walk traverses.
pub fn apply_walk(instance: &Instance, f: &EdgeLabeling, q: &Walk) -> Result<EdgeLabeling> {
    q.check(instance)?;
    Ok(apply_unchecked(instance, f, q))
}

pub(crate) fn apply_unchecked(instance: &Instance, f: &EdgeLabeling, q: &Walk) -> EdgeLabeling {
    let mut g = f.clone();
    for h in q.half_edges() {
        instance.flip(&mut g, h.var, h.constraint);
    }
    g
}

/// Whether `q` is an f-walk: its interior variables are consistent in `f`,
/// and flipping any prefix ending in a variable, or the whole walk, keeps
/// `f` valid. Walks ending in a variable must not be closed.
pub fn is_f_walk(instance: &Instance, f: &EdgeLabeling, q: &Walk) -> bool {
    if q.check(instance).is_err() || instance.check_labeling(f).is_err() {
        return false;
    }
    if instance.first_violation(f).is_some() {
        return false;
    }
    if q.is_empty() {
        return true;
    }
    if !q.is_half_integral() && q.start() == q.last_var() {
        return false;
    }
    let interior_end = if q.is_half_integral() { q.vars.len() } else { q.vars.len() - 1 };
    if q.vars[1..interior_end].iter().any(|&v| !instance.is_consistent(f, v)) {
        return false;
    }
    // A step q_{i-1} C_i q_i only touches C_i, so checking C_i after each
    // step covers every prefix.
    let mut g = f.clone();
    for (i, &c) in q.constraints.iter().enumerate() {
        instance.flip(&mut g, q.vars[i], c);
        if let Some(&w) = q.vars.get(i + 1) {
            instance.flip(&mut g, w, c);
        }
        if !instance.relation(c).has(g.tuple(c)) {
            return false;
        }
    }
    true
}

/// Whether `q` is an augmenting f-walk: an f-walk from an inconsistent
/// variable that ends in a different inconsistent variable or in a
/// constraint.
pub fn is_augmenting(instance: &Instance, f: &EdgeLabeling, q: &Walk) -> bool {
    if !is_f_walk(instance, f, q) || instance.is_consistent(f, q.start()) {
        return false;
    }
    match q.end() {
        None => true,
        Some(e) => e != q.start() && !instance.is_consistent(f, e),
    }
}
