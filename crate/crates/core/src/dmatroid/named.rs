use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::dmatroid::{FlipSet, Relation, Tuple};
use crate::error::{Error, Result};

/// A relation together with the variable names of its scope.
///
/// Serializes as `{"scope": [...], "tuples": [...]}` where character `i` of
/// every tuple string is the value of `scope[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationFile", into = "RelationFile")]
pub struct NamedRelation {
    scope: Vec<String>,
    relation: Relation,
}

#[derive(Serialize, Deserialize)]
struct RelationFile {
    scope: Vec<String>,
    tuples: Vec<String>,
}

impl TryFrom<RelationFile> for NamedRelation {
    type Error = Error;
    fn try_from(raw: RelationFile) -> Result<Self> {
        let relation = Relation::parse(raw.scope.len(), &raw.tuples)?;
        NamedRelation::new(raw.scope, relation)
    }
}

impl From<NamedRelation> for RelationFile {
    fn from(r: NamedRelation) -> Self {
        RelationFile { tuples: r.relation.to_strings(), scope: r.scope }
    }
}

impl NamedRelation {
    pub fn new(scope: Vec<String>, relation: Relation) -> Result<Self> {
        if scope.len() != relation.arity() {
            return Err(Error::ArityMismatch { expected: scope.len(), found: relation.arity() });
        }
        let mut seen = HashSet::new();
        for v in &scope {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(NamedRelation { scope, relation })
    }

    /// Names the positions `v1, v2, …`.
    pub fn with_default_scope(relation: Relation) -> Self {
        let scope = (1..=relation.arity()).map(|i| format!("v{i}")).collect();
        NamedRelation { scope, relation }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relation serializes")
    }

    pub fn scope(&self) -> &[String] {
        &self.scope
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn into_relation(self) -> Relation {
        self.relation
    }

    pub fn position(&self, var: &str) -> Result<usize> {
        self.scope
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    pub fn contains(&self, t: &Tuple) -> Result<bool> {
        self.relation.contains(t)
    }

    pub fn direct_product(&self, other: &NamedRelation) -> Result<NamedRelation> {
        if let Some(v) = self.scope.iter().find(|v| other.scope.contains(v)) {
            return Err(Error::OverlappingScopes(v.clone()));
        }
        let scope = self.scope.iter().chain(&other.scope).cloned().collect();
        Ok(NamedRelation { scope, relation: self.relation.direct_product(&other.relation) })
    }

    pub fn identify(&self, w1: &str, w2: &str) -> Result<NamedRelation> {
        let (p1, p2) = (self.position(w1)?, self.position(w2)?);
        let relation = self.relation.identify(p1, p2)?;
        let scope = self
            .scope
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != p1 && i != p2)
            .map(|(_, v)| v.clone())
            .collect();
        Ok(NamedRelation { scope, relation })
    }

    pub fn minor_fix(&self, var: &str, c: bool) -> Result<NamedRelation> {
        let p = self.position(var)?;
        let relation = self.relation.fix(p, c)?;
        let mut scope = self.scope.clone();
        scope.remove(p);
        Ok(NamedRelation { scope, relation })
    }

    pub fn flip_values(&self, vars: &[&str]) -> Result<NamedRelation> {
        let positions = vars.iter().map(|v| self.position(v)).collect::<Result<Vec<_>>>()?;
        let flips = FlipSet::new(positions, self.relation.arity())?;
        Ok(NamedRelation { scope: self.scope.clone(), relation: self.relation.flip_values(&flips) })
    }
}
