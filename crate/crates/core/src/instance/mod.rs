//! Edge CSP instances, edge labelings and the exhaustive reference solver.

mod brute;
mod labeling;
mod spec;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use brute::{
    brute_force_optimum, brute_force_optimum_bounded, for_each_valid_labeling, BruteForce,
    DEFAULT_ENUMERATION_BOUND,
};
pub use labeling::{parity_invariant_check, EdgeLabeling};
pub use spec::{
    normalize_degree, validate_instance, ConstraintSpec, Diagnostic, InstanceSpec, OracleSpec,
    SCHEMA_VERSION,
};

use crate::dmatroid::{NamedRelation, Relation, Tuple};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConstraintId(pub usize);

/// A half-edge `{v, C}` of the constraint graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub var: VarId,
    pub constraint: ConstraintId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub scope: Vec<VarId>,
    pub relation: Relation,
}

/// An edge CSP instance: every variable lies in the scopes of exactly two
/// distinct constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    var_names: Vec<String>,
    constraints: Vec<Constraint>,
    /// For each variable, its two occurrences as `(constraint, position)`,
    /// ordered by constraint id.
    incidence: Vec<[(ConstraintId, usize); 2]>,
}

impl Instance {
    /// Builds an instance, checking the edge CSP invariants.
    pub fn new(var_names: Vec<String>, constraints: Vec<Constraint>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in var_names.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        let mut names = HashMap::new();
        let mut occurrences: Vec<Vec<(ConstraintId, usize)>> = vec![Vec::new(); var_names.len()];
        for (ci, c) in constraints.iter().enumerate() {
            if names.insert(c.name.as_str(), ci).is_some() {
                return Err(Error::InvalidInstance(format!("constraint {:?} defined twice", c.name)));
            }
            if c.scope.len() != c.relation.arity() {
                return Err(Error::InvalidInstance(format!(
                    "constraint {:?} has scope of length {} but relation arity {}",
                    c.name,
                    c.scope.len(),
                    c.relation.arity()
                )));
            }
            if c.relation.is_empty() {
                return Err(Error::InvalidInstance(format!("constraint {:?} has no tuples", c.name)));
            }
            for (pos, v) in c.scope.iter().enumerate() {
                let occ = occurrences.get_mut(v.0).ok_or_else(|| {
                    Error::InvalidInstance(format!("constraint {:?} uses unknown variable {}", c.name, v.0))
                })?;
                if occ.iter().any(|&(cj, _)| cj.0 == ci) {
                    return Err(Error::InvalidInstance(format!(
                        "variable {:?} occurs twice in constraint {:?}",
                        var_names[v.0], c.name
                    )));
                }
                occ.push((ConstraintId(ci), pos));
            }
        }
        let mut incidence = Vec::with_capacity(var_names.len());
        for (v, occ) in occurrences.into_iter().enumerate() {
            if occ.len() != 2 {
                if occ.len() > 2 {
                    return Err(Error::DegreeTooLarge { var: var_names[v].clone(), degree: occ.len() });
                }
                return Err(Error::InvalidInstance(format!(
                    "variable {:?} has degree {}",
                    var_names[v],
                    occ.len()
                )));
            }
            incidence.push([occ[0], occ[1]]);
        }
        Ok(Instance { var_names, constraints, incidence })
    }

    /// Parses the JSON instance format and checks it.
    pub fn from_json(text: &str) -> Result<Self> {
        InstanceSpec::from_json(text)?.build()
    }

    pub fn to_spec(&self) -> InstanceSpec {
        InstanceSpec {
            schema_version: Some(SCHEMA_VERSION),
            variables: self.var_names.clone(),
            constraints: self
                .constraints
                .iter()
                .map(|c| ConstraintSpec {
                    id: c.name.clone(),
                    scope: c.scope.iter().map(|&v| self.var_names[v.0].clone()).collect(),
                    tuples: c.relation.to_strings(),
                    oracle: None,
                })
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.var_names.len()).map(VarId)
    }

    pub fn constraint_ids(&self) -> impl Iterator<Item = ConstraintId> + '_ {
        (0..self.constraints.len()).map(ConstraintId)
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.var_names[v.0]
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.var_names.iter().position(|n| n == name).map(VarId)
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraint(&self, c: ConstraintId) -> &Constraint {
        &self.constraints[c.0]
    }

    pub fn constraint_by_name(&self, name: &str) -> Option<ConstraintId> {
        self.constraints.iter().position(|c| c.name == name).map(ConstraintId)
    }

    pub fn relation(&self, c: ConstraintId) -> &Relation {
        &self.constraints[c.0].relation
    }

    pub fn named_relation(&self, c: ConstraintId) -> NamedRelation {
        let con = &self.constraints[c.0];
        let scope = con.scope.iter().map(|&v| self.var_names[v.0].clone()).collect();
        NamedRelation::new(scope, con.relation.clone()).expect("instance scopes are distinct")
    }

    /// The two occurrences of `v`, as `(constraint, position in scope)`.
    pub fn incidence(&self, v: VarId) -> [(ConstraintId, usize); 2] {
        self.incidence[v.0]
    }

    /// Position of `v` in the scope of `c`, if `{v, c}` is a half-edge.
    pub fn position(&self, v: VarId, c: ConstraintId) -> Option<usize> {
        self.incidence[v.0].iter().find(|&&(ci, _)| ci == c).map(|&(_, p)| p)
    }

    /// The occurrence of `v` that is not in `c`.
    pub fn other_end(&self, v: VarId, c: ConstraintId) -> (ConstraintId, usize) {
        let [a, b] = self.incidence[v.0];
        if a.0 == c {
            b
        } else {
            debug_assert_eq!(b.0, c);
            a
        }
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        self.constraints.iter().enumerate().flat_map(|(ci, c)| {
            c.scope.iter().map(move |&var| HalfEdge { var, constraint: ConstraintId(ci) })
        })
    }

    /// Picks the canonically first tuple of every constraint.
    pub fn initial_labeling(&self) -> EdgeLabeling {
        EdgeLabeling::from_tuples(
            self.constraints
                .iter()
                .map(|c| c.relation.first().expect("relations are nonempty").clone())
                .collect(),
        )
    }

    /// Checks that `f` has one tuple of the right arity per constraint.
    pub fn check_labeling(&self, f: &EdgeLabeling) -> Result<()> {
        if f.len() != self.constraints.len() {
            return Err(Error::LabelingMismatch(format!(
                "{} constraint tuples for {} constraints",
                f.len(),
                self.constraints.len()
            )));
        }
        for (c, t) in self.constraints.iter().zip(f.tuples()) {
            if t.len() != c.scope.len() {
                return Err(Error::LabelingMismatch(format!(
                    "tuple of length {} at constraint {:?} of arity {}",
                    t.len(),
                    c.name,
                    c.scope.len()
                )));
            }
        }
        Ok(())
    }

    /// `f(C) ∈ C` for every constraint. Panics if `f` does not fit the instance.
    pub fn is_valid(&self, f: &EdgeLabeling) -> bool {
        self.check_labeling(f).expect("labeling fits the instance");
        self.constraints.iter().zip(f.tuples()).all(|(c, t)| c.relation.has(t))
    }

    /// The first constraint whose tuple is not in its relation.
    pub fn first_violation(&self, f: &EdgeLabeling) -> Option<ConstraintId> {
        self.constraints
            .iter()
            .zip(f.tuples())
            .position(|(c, t)| !c.relation.has(t))
            .map(ConstraintId)
    }

    pub fn value(&self, f: &EdgeLabeling, v: VarId, c: ConstraintId) -> bool {
        let p = self.position(v, c).expect("half-edge of the instance");
        f.tuple(c).get(p)
    }

    pub fn is_consistent(&self, f: &EdgeLabeling, v: VarId) -> bool {
        let [(a, pa), (b, pb)] = self.incidence[v.0];
        f.tuple(a).get(pa) == f.tuple(b).get(pb)
    }

    pub fn inconsistent_vars(&self, f: &EdgeLabeling) -> Vec<VarId> {
        self.vars().filter(|&v| !self.is_consistent(f, v)).collect()
    }

    pub fn inconsistency_count(&self, f: &EdgeLabeling) -> usize {
        self.vars().filter(|&v| !self.is_consistent(f, v)).count()
    }

    /// Flips the half-edge `{v, c}` in place.
    pub fn flip(&self, f: &mut EdgeLabeling, v: VarId, c: ConstraintId) {
        let p = self.position(v, c).expect("half-edge of the instance");
        f.tuple_mut(c).flip(p);
    }

    /// Tuple of `c` under `f` with the listed variables flipped.
    pub fn flipped_tuple(&self, f: &EdgeLabeling, c: ConstraintId, vars: &[VarId]) -> Tuple {
        let mut t = f.tuple(c).clone();
        for &v in vars {
            t.flip(self.position(v, c).expect("variable in scope"));
        }
        t
    }

    /// Reads a labeling keyed by `"var@constraint"`.
    pub fn labeling_from_json(&self, text: &str) -> Result<EdgeLabeling> {
        EdgeLabeling::from_json(self, text)
    }

    pub fn labeling_to_json(&self, f: &EdgeLabeling) -> String {
        f.to_json(self)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let scope: Vec<&str> = c.scope.iter().map(|&v| self.var_names[v.0].as_str()).collect();
            writeln!(f, "{}({}) = {{{}}}", c.name, scope.join(", "), c.relation.to_strings().join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
