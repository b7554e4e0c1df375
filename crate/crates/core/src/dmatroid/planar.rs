use serde::Serialize;

use crate::dmatroid::Relation;
use crate::error::{Error, Result};

/// `EVEN_i = {(x1, …, xi) : x1 ⊕ … ⊕ xi = 0}`.
pub fn even_relation(i: usize) -> Relation {
    Relation::parity_class(i, false)
}

/// Per-relation findings of [`planar_tractability_report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFlags {
    pub arity: usize,
    pub self_complementary: bool,
    /// `dR` as bit strings; absent for arity 1, where `d` is undefined.
    pub d_transform: Option<Vec<String>>,
    pub d_even_delta_matroid: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Every relation that can be checked passes, but some self-complementary
    /// relation has arity 1 and its `d`-image is not defined.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarReport {
    pub relations: Vec<RelationFlags>,
    /// Whether every relation is self-complementary with an even Δ-matroid
    /// `d`-image.
    pub verdict: Verdict,
    /// `EVEN_1`, `EVEN_2`, `EVEN_3`, which the reduction adds to `dΓ`.
    pub even_relations: Vec<Vec<String>>,
}

/// Checks the self-complementarity / even-Δ-matroid condition of the planar
/// dichotomy on every relation of `gamma`.
///
/// Only that condition is reported. Whether `CSP(Γ)` itself is tractable is
/// a separate question this function does not answer.
///
/// ```
/// use edgecsp::{planar_tractability_report, Relation, Verdict};
/// let eq = Relation::from_strs(&["00", "11"]).unwrap();
/// let report = planar_tractability_report(&[eq]).unwrap();
/// assert_eq!(report.verdict, Verdict::Holds);
/// assert_eq!(report.relations[0].d_transform.as_deref(), Some(&["00".to_string()][..]));
/// ```
pub fn planar_tractability_report(gamma: &[Relation]) -> Result<PlanarReport> {
    if gamma.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let mut relations = Vec::with_capacity(gamma.len());
    let mut fails = false;
    let mut undetermined = false;
    for r in gamma {
        if r.arity() == 0 {
            return Err(Error::ArityTooSmall { arity: 0, needed: 1 });
        }
        let self_complementary = r.is_self_complementary();
        let (d_transform, d_even) = if r.arity() >= 2 {
            let d = r.d_transform()?;
            let ok = d.is_even_delta_matroid();
            (Some(d.to_strings()), Some(ok))
        } else {
            (None, None)
        };
        match (self_complementary, d_even) {
            (false, _) | (true, Some(false)) => fails = true,
            (true, None) => undetermined = true,
            (true, Some(true)) => {}
        }
        relations.push(RelationFlags {
            arity: r.arity(),
            self_complementary,
            d_transform,
            d_even_delta_matroid: d_even,
        });
    }
    let verdict = if fails {
        Verdict::Fails
    } else if undetermined {
        Verdict::Undetermined
    } else {
        Verdict::Holds
    };
    Ok(PlanarReport {
        relations,
        verdict,
        even_relations: (1..=3).map(|i| even_relation(i).to_strings()).collect(),
    })
}
