//! Walks through the constraint graph, `f ⊕ q` updates and f-DAGs.

mod fdag;
pub(crate) mod walk;

pub use fdag::{apply_dag, validate_fdag, DagEdge, DagViolation, EdgeDir, FDag};
pub use walk::{apply_walk, is_augmenting, is_f_walk, Walk};

#[cfg(test)]
mod tests;
