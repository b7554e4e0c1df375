use thiserror::Error;

/// Errors reported by the library.
///
/// `Internal` marks a broken invariant inside the solver. It never signals bad
/// input; callers should treat it as a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("tuple of length {found} used with a relation of arity {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("relation is empty")]
    EmptyRelation,

    #[error("the relation list is empty")]
    EmptyLanguage,

    #[error("the two tuples differ in {0} positions; an even number is required")]
    OddDifference(usize),

    #[error("tuple {tuple} is not a member of the relation")]
    NotAMember { tuple: String },

    #[error("relation arity {arity} is too small for this operation (needs at least {needed})")]
    ArityTooSmall { arity: usize, needed: usize },

    #[error("arity {arity} is outside the supported range 1..={max}")]
    ArityOutOfRange { arity: usize, max: usize },

    #[error("variable {0:?} is not in the scope")]
    UnknownVariable(String),

    #[error("variable {0:?} occurs more than once")]
    DuplicateVariable(String),

    #[error("scopes overlap on variable {0:?}")]
    OverlappingScopes(String),

    #[error("position {position} is out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("variable {var:?} occurs in {degree} constraints")]
    DegreeTooLarge { var: String, degree: usize },

    #[error("edge labeling does not match the instance: {0}")]
    LabelingMismatch(String),

    #[error("edge labeling is not valid at constraint {0:?}")]
    InvalidLabeling(String),

    #[error("enumeration needs {needed} labelings, above the bound {bound}")]
    BoundExceeded { needed: u128, bound: u128 },

    #[error("constraint {0:?} is not an even Δ-matroid; use the coverable solver")]
    NotEvenDeltaMatroid(String),

    #[error("no cover oracle for constraint {0:?}")]
    MissingCoverOracle(String),

    #[error("relation is not in the class required by the {class} cover: {reason}")]
    NotInCoverClass { class: &'static str, reason: String },

    #[error("cover check failed for constraint {constraint:?} at {alpha}: {violation}")]
    CoverRejected {
        constraint: String,
        alpha: String,
        violation: String,
    },

    #[error("the second labeling must have strictly fewer inconsistencies ({better} vs {worse})")]
    NotAnImprovement { better: usize, worse: usize },

    #[error("malformed walk: {0}")]
    InvalidWalk(String),

    #[error("f-DAG does not have the required shape: {0}")]
    DagShape(String),

    #[error("graph error: {0}")]
    Graph(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
