//! Covers of Δ-matroids and the solver for instances whose constraints can
//! be covered by even Δ-matroids.
//!
//! A cover assigns to each tuple `α ∈ M` an even Δ-matroid `M_α` that holds
//! everything reachable from `α` by even-neighbor steps. Given covers, each
//! improvement step reduces to the even solver on `I(f, C, {α})` for some
//! constraint `C` and `α ∈ C`.
//!
//! ```
//! use edgecsp::coverable::verify_cover;
//! use edgecsp::{interference_matroid, Relation, Tuple};
//!
//! let m = interference_matroid();
//! let even = Relation::from_strs(&["000", "110", "101", "011"])?;
//! assert!(verify_cover(&m, &Tuple::parse("000")?, &even).is_ok());
//! let odd = Relation::from_strs(&["111"])?;
//! assert!(verify_cover(&m, &Tuple::parse("111")?, &odd).is_ok());
//! # Ok::<(), edgecsp::Error>(())
//! ```

mod classes;
mod oracle;
mod reach;
mod solve;
mod zebra;

pub use classes::{
    check_gc_axioms, compact_relation, cover_coindependent, cover_compact, cover_interference_free, is_coindependent,
    is_compact_like, is_gap2_free, GcFunction, OnesCount, MAX_ENUMERATION_ARITY,
};
pub use oracle::{CoverOracle, OracleMap};
pub use reach::{even_neighbors, reachable_set, verify_cover, CoverViolation, ReachabilityGraph};
pub use solve::{
    build_restricted_instance, lift_general, solve_coverable, solve_coverable_with, CoverableOptions,
    CoverableSolution,
};
pub use zebra::{even_zebra_cover_search, DEFAULT_ZEBRA_ARITY};
