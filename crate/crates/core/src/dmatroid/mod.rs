//! Boolean relations given as explicit tuple lists, and the Δ-matroid
//! algebra over them.

mod minor;
mod named;
mod planar;
mod relation;
mod tuple;

pub use minor::interference_matroid;
pub use named::NamedRelation;
pub use planar::{even_relation, planar_tractability_report, PlanarReport, RelationFlags, Verdict};
pub use relation::{FlipSet, Relation};
pub use tuple::Tuple;

#[cfg(test)]
mod tests;
