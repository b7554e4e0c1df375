//! Minimum-inconsistency labelings of Boolean edge CSPs whose constraints are
//! Δ-matroids.
//!
//! Start with [`Instance`] and [`optimize`]. Relations that are not even
//! Δ-matroids go through [`coverable::solve_coverable`] with a cover oracle per
//! constraint. The guide in `book/` walks through every module.

pub mod dmatroid;
pub mod coverable;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod instance;
pub mod matching;
pub mod solver;
pub mod walks;

pub use dmatroid::{
    even_relation, interference_matroid, planar_tractability_report, FlipSet, NamedRelation,
    PlanarReport, Relation, RelationFlags, Tuple, Verdict,
};
pub use error::{Error, Result};
pub use instance::{
    brute_force_optimum, normalize_degree, validate_instance, ConstraintId, EdgeLabeling, Instance,
    InstanceSpec, VarId,
};
pub use solver::{improve, optimize, Outcome, Solution};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/coverable.md")]
    mod coverable {}
    #[doc = include_str!("../../../book/src/matching.md")]
    mod matching {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
