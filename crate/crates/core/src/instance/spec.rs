use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dmatroid::Relation;
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance, VarId};

pub const SCHEMA_VERSION: u32 = 1;

/// The instance file as written on disk, before any checking.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub variables: Vec<String>,
    pub constraints: Vec<ConstraintSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub id: String,
    pub scope: Vec<String>,
    pub tuples: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSpec>,
}

/// Cover oracle configuration attached to a constraint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSpec {
    pub class: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
}

/// A reason an instance file does not describe an edge CSP instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    Degree { var: String, degree: usize },
    RepeatedInScope { constraint: String, var: String },
    UnknownVariable { constraint: String, var: String },
    DuplicateVariable(String),
    DuplicateConstraint(String),
    EmptyRelation(String),
    BadTuples { constraint: String, reason: String },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Degree { var, degree } => write!(f, "variable {var}: degree {degree}"),
            Diagnostic::RepeatedInScope { constraint, var } => {
                write!(f, "constraint {constraint}: variable {var} repeated in scope")
            }
            Diagnostic::UnknownVariable { constraint, var } => {
                write!(f, "constraint {constraint}: unknown variable {var}")
            }
            Diagnostic::DuplicateVariable(v) => write!(f, "variable {v}: declared twice"),
            Diagnostic::DuplicateConstraint(c) => write!(f, "constraint {c}: declared twice"),
            Diagnostic::EmptyRelation(c) => write!(f, "constraint {c}: no tuples"),
            Diagnostic::BadTuples { constraint, reason } => write!(f, "constraint {constraint}: {reason}"),
        }
    }
}

impl InstanceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: InstanceSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(v) = spec.schema_version {
            if v != SCHEMA_VERSION {
                return Err(Error::Parse(format!("unsupported schema_version {v}")));
            }
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// Builds the checked instance, reporting the first diagnostic as an error.
    pub fn build(&self) -> Result<Instance> {
        if let Some(d) = validate_instance(self).into_iter().next() {
            return Err(match d {
                Diagnostic::Degree { var, degree } if degree > 2 => Error::DegreeTooLarge { var, degree },
                Diagnostic::RepeatedInScope { var, .. } => Error::DuplicateVariable(var),
                Diagnostic::UnknownVariable { var, .. } => Error::UnknownVariable(var),
                other => Error::InvalidInstance(other.to_string()),
            });
        }
        let index: HashMap<&str, usize> =
            self.variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                Ok(Constraint {
                    name: c.id.clone(),
                    scope: c.scope.iter().map(|v| VarId(index[v.as_str()])).collect(),
                    relation: Relation::parse(c.scope.len(), &c.tuples)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(self.variables.clone(), constraints)
    }

    fn degrees(&self) -> HashMap<&str, usize> {
        let mut deg: HashMap<&str, usize> = self.variables.iter().map(|v| (v.as_str(), 0)).collect();
        for c in &self.constraints {
            let distinct: HashSet<&str> = c.scope.iter().map(String::as_str).collect();
            for v in distinct {
                if let Some(d) = deg.get_mut(v) {
                    *d += 1;
                }
            }
        }
        deg
    }
}

/// Lists every way `spec` fails to be an edge CSP instance; empty means valid.
pub fn validate_instance(spec: &InstanceSpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut declared = HashSet::new();
    for v in &spec.variables {
        if !declared.insert(v.as_str()) {
            out.push(Diagnostic::DuplicateVariable(v.clone()));
        }
    }
    let mut ids = HashSet::new();
    for c in &spec.constraints {
        if !ids.insert(c.id.as_str()) {
            out.push(Diagnostic::DuplicateConstraint(c.id.clone()));
        }
        let mut in_scope = HashSet::new();
        for v in &c.scope {
            if !declared.contains(v.as_str()) {
                out.push(Diagnostic::UnknownVariable { constraint: c.id.clone(), var: v.clone() });
            }
            if !in_scope.insert(v.as_str()) {
                out.push(Diagnostic::RepeatedInScope { constraint: c.id.clone(), var: v.clone() });
            }
        }
        if c.tuples.is_empty() {
            out.push(Diagnostic::EmptyRelation(c.id.clone()));
        } else if let Err(e) = Relation::parse(c.scope.len(), &c.tuples) {
            out.push(Diagnostic::BadTuples { constraint: c.id.clone(), reason: e.to_string() });
        }
    }
    let deg = spec.degrees();
    let mut seen = HashSet::new();
    for v in &spec.variables {
        if seen.insert(v.as_str()) && deg[v.as_str()] != 2 {
            out.push(Diagnostic::Degree { var: v.clone(), degree: deg[v.as_str()] });
        }
    }
    out
}

/// Turns an instance whose variables have degree at most 2 into an edge CSP
/// instance by taking two copies and fusing the copies of each degree-1
/// variable.
///
/// Copies get the suffixes `#0` and `#1`. A degree-1 variable keeps its name
/// and joins the two copies of its constraint. Variables that occur in no
/// constraint are dropped. The optimum of the result is twice the optimum of
/// the input, where the input counts inconsistencies of degree-2 variables
/// only.
pub fn normalize_degree(spec: &InstanceSpec) -> Result<Instance> {
    let problems: Vec<Diagnostic> = validate_instance(spec)
        .into_iter()
        .filter(|d| !matches!(d, Diagnostic::Degree { degree, .. } if *degree < 2))
        .collect();
    if let Some(d) = problems.into_iter().next() {
        return Err(match d {
            Diagnostic::Degree { var, degree } => Error::DegreeTooLarge { var, degree },
            other => Error::InvalidInstance(other.to_string()),
        });
    }
    let deg = spec.degrees();
    let mut variables = Vec::new();
    for v in &spec.variables {
        match deg[v.as_str()] {
            0 => {}
            1 => variables.push(v.clone()),
            _ => {
                variables.push(format!("{v}#0"));
                variables.push(format!("{v}#1"));
            }
        }
    }
    let mut constraints = Vec::new();
    for copy in 0..2 {
        for c in &spec.constraints {
            let scope = c
                .scope
                .iter()
                .map(|v| if deg[v.as_str()] == 1 { v.clone() } else { format!("{v}#{copy}") })
                .collect();
            constraints.push(ConstraintSpec {
                id: format!("{}#{copy}", c.id),
                scope,
                tuples: c.tuples.clone(),
                oracle: c.oracle.clone(),
            });
        }
    }
    InstanceSpec { schema_version: Some(SCHEMA_VERSION), variables, constraints }.build()
}
