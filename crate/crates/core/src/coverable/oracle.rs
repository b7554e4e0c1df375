use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::coverable::classes::{
    cover_coindependent, cover_compact, cover_interference_free, is_coindependent, is_compact_like, GcFunction,
    OnesCount,
};
use crate::coverable::reach::verify_cover;
use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::instance::{ConstraintId, Instance, InstanceSpec, OracleSpec};

/// A way to list `M_α` for the relations of one class.
#[derive(Clone)]
pub enum CoverOracle {
    /// The relation is an even Δ-matroid and covers itself.
    Even,
    CoIndependent,
    Compact { gc: Arc<dyn GcFunction>, levels: BTreeSet<usize> },
    InterferenceFree,
    /// Explicit covers, one per tuple.
    Custom(BTreeMap<Tuple, Relation>),
    /// Covers of `M × N` from covers of `M` (the first `split` positions)
    /// and of `N`.
    Product { split: usize, left: Box<CoverOracle>, right: Box<CoverOracle> },
    /// Covers of `M_{w1=w2}` from covers of `M`.
    Identified { original: Relation, w1: usize, w2: usize, inner: Box<CoverOracle> },
}

impl fmt::Debug for CoverOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverOracle::Compact { gc, levels } => {
                f.debug_struct("Compact").field("gc", &gc.name()).field("levels", levels).finish()
            }
            CoverOracle::Custom(map) => f.debug_tuple("Custom").field(&map.len()).finish(),
            CoverOracle::Product { split, left, right } => {
                f.debug_struct("Product").field("split", split).field("left", left).field("right", right).finish()
            }
            CoverOracle::Identified { w1, w2, inner, .. } => {
                f.debug_struct("Identified").field("w1", w1).field("w2", w2).field("inner", inner).finish()
            }
            other => f.write_str(other.class_name()),
        }
    }
}

fn project(m: &Relation, positions: &[usize]) -> Result<Relation> {
    Relation::new(positions.len(), m.iter().map(|t| t.select(positions)))
}

impl CoverOracle {
    /// Ones-count compact oracle with level set `levels`.
    pub fn compact_ones<I: IntoIterator<Item = usize>>(levels: I) -> Self {
        CoverOracle::Compact { gc: Arc::new(OnesCount), levels: levels.into_iter().collect() }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            CoverOracle::Even => "even",
            CoverOracle::CoIndependent => "coindependent",
            CoverOracle::Compact { .. } => "compact",
            CoverOracle::InterferenceFree => "interference_free",
            CoverOracle::Custom(_) => "custom",
            CoverOracle::Product { .. } => "product",
            CoverOracle::Identified { .. } => "identified",
        }
    }

    /// Whether `m` belongs to the class this oracle covers.
    pub fn check_class(&self, m: &Relation) -> Result<()> {
        let reject = |class: &'static str, reason: &str| Err(Error::NotInCoverClass { class, reason: reason.into() });
        match self {
            CoverOracle::Even if !m.is_even_delta_matroid() => reject("even", "not an even Δ-matroid"),
            CoverOracle::CoIndependent if !is_coindependent(m)? => reject("co-independent", "a non-member has a flip outside"),
            CoverOracle::Compact { gc, levels } if !is_compact_like(m, gc.as_ref(), levels)? => {
                reject("compact", "membership does not match a 2-gap free level set")
            }
            CoverOracle::InterferenceFree if m.contains_interference_minor() => {
                reject("interference-free", "the relation has an interference minor")
            }
            CoverOracle::Custom(map) if m.iter().any(|t| !map.contains_key(t)) => reject("custom", "a tuple has no cover"),
            _ => Ok(()),
        }
    }

    /// `M_α` for `α ∈ m`.
    pub fn cover(&self, m: &Relation, alpha: &Tuple) -> Result<Relation> {
        if !m.contains(alpha)? {
            return Err(Error::NotAMember { tuple: alpha.to_bit_string() });
        }
        match self {
            CoverOracle::Even => {
                self.check_class(m)?;
                Ok(m.clone())
            }
            CoverOracle::CoIndependent => cover_coindependent(m, alpha),
            CoverOracle::Compact { gc, levels } => cover_compact(m, gc.as_ref(), levels, alpha),
            CoverOracle::InterferenceFree => cover_interference_free(m, alpha),
            CoverOracle::Custom(map) => map.get(alpha).cloned().ok_or_else(|| Error::NotInCoverClass {
                class: "custom",
                reason: format!("no cover listed for {}", alpha.to_bit_string()),
            }),
            CoverOracle::Product { split, left, right } => {
                let n = m.arity();
                if *split > n {
                    return Err(Error::PositionOutOfRange { position: *split, arity: n });
                }
                let (lp, rp): (Vec<usize>, Vec<usize>) = ((0..*split).collect(), (*split..n).collect());
                let (lm, rm) = (project(m, &lp)?, project(m, &rp)?);
                if lm.len() * rm.len() != m.len() {
                    return Err(Error::NotInCoverClass { class: "product", reason: "not a direct product at the split".into() });
                }
                let a = left.cover(&lm, &alpha.select(&lp))?;
                let b = right.cover(&rm, &alpha.select(&rp))?;
                Ok(a.direct_product(&b))
            }
            CoverOracle::Identified { original, w1, w2, inner } => {
                let identified = original.identify(*w1, *w2)?;
                if &identified != m {
                    return Err(Error::NotInCoverClass {
                        class: "identified",
                        reason: "the relation is not the identification of the stored original".into(),
                    });
                }
                let beta = witness(original, *w1, *w2, alpha).expect("α is in the identification");
                inner.cover(original, &beta)?.identify(*w1, *w2)
            }
        }
    }

    /// Oracle from an instance file entry.
    pub fn from_spec(spec: &OracleSpec) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("oracle {:?}: {msg}", spec.class));
        match spec.class.as_str() {
            "even" => Ok(CoverOracle::Even),
            "coindependent" => Ok(CoverOracle::CoIndependent),
            "interference_free" => Ok(CoverOracle::InterferenceFree),
            "compact" => {
                let gc = spec.params.get("gc").and_then(|g| g.as_str()).unwrap_or("ones");
                if gc != "ones" {
                    return Err(bad(format!("unknown gc-function {gc:?}")));
                }
                let levels: BTreeSet<usize> = serde_json::from_value(spec.params.get("S").cloned().unwrap_or_default())
                    .map_err(|e| bad(format!("S: {e}")))?;
                Ok(CoverOracle::compact_ones(levels))
            }
            "custom" => {
                let raw: BTreeMap<String, Vec<String>> =
                    serde_json::from_value(spec.params.get("covers").cloned().unwrap_or_default())
                        .map_err(|e| bad(format!("covers: {e}")))?;
                let mut map = BTreeMap::new();
                for (alpha, tuples) in raw {
                    let alpha = Tuple::parse(&alpha)?;
                    map.insert(alpha.clone(), Relation::parse(alpha.len(), &tuples)?);
                }
                Ok(CoverOracle::Custom(map))
            }
            other => Err(bad(format!("unknown class {other:?}"))),
        }
    }

    /// Instance file entry, for the classes that have one.
    pub fn to_spec(&self) -> Option<OracleSpec> {
        let (class, params) = match self {
            CoverOracle::Even | CoverOracle::CoIndependent | CoverOracle::InterferenceFree => {
                (self.class_name(), serde_json::Value::Null)
            }
            CoverOracle::Compact { gc, levels } if gc.name() == "ones" => ("compact", json!({"gc": "ones", "S": levels})),
            CoverOracle::Custom(map) => {
                let covers: BTreeMap<String, Vec<String>> =
                    map.iter().map(|(a, r)| (a.to_bit_string(), r.to_strings())).collect();
                ("custom", json!({ "covers": covers }))
            }
            _ => return None,
        };
        Some(OracleSpec { class: class.to_string(), params })
    }
}

/// A tuple of `original` agreeing at `w1` and `w2` whose other positions
/// spell `alpha`.
pub(crate) fn witness(original: &Relation, w1: usize, w2: usize, alpha: &Tuple) -> Option<Tuple> {
    let n = original.arity();
    [false, true].into_iter().find_map(|c| {
        let mut it = alpha.iter();
        let beta = Tuple::from_bits((0..n).map(|p| if p == w1 || p == w2 { c } else { it.next().unwrap_or(false) }));
        original.has(&beta).then_some(beta)
    })
}

/// One cover oracle per constraint of an instance.
#[derive(Clone, Debug)]
pub struct OracleMap {
    oracles: Vec<CoverOracle>,
}

impl OracleMap {
    pub fn new(instance: &Instance, oracles: Vec<CoverOracle>) -> Result<Self> {
        if oracles.len() != instance.num_constraints() {
            return Err(Error::ArityMismatch { expected: instance.num_constraints(), found: oracles.len() });
        }
        Ok(OracleMap { oracles })
    }

    /// The same oracle everywhere.
    pub fn uniform(instance: &Instance, oracle: CoverOracle) -> Self {
        OracleMap { oracles: vec![oracle; instance.num_constraints()] }
    }

    /// Oracles named in an instance file, matched to `instance` by
    /// constraint name. Constraints without one get [`CoverOracle::Even`]
    /// when they are even Δ-matroids.
    pub fn from_spec(spec: &InstanceSpec, instance: &Instance) -> Result<Self> {
        let named: BTreeMap<&str, &OracleSpec> =
            spec.constraints.iter().filter_map(|c| c.oracle.as_ref().map(|o| (c.id.as_str(), o))).collect();
        let mut oracles = Vec::with_capacity(instance.num_constraints());
        for c in instance.constraints() {
            // Normalized copies are named "C#0" and "C#1".
            let base = c.name.rsplit_once('#').map_or(c.name.as_str(), |(b, _)| b);
            match named.get(c.name.as_str()).or_else(|| named.get(base)) {
                Some(o) => oracles.push(CoverOracle::from_spec(o)?),
                None if c.relation.is_even_delta_matroid() => oracles.push(CoverOracle::Even),
                None => return Err(Error::MissingCoverOracle(c.name.clone())),
            }
        }
        Ok(OracleMap { oracles })
    }

    pub fn get(&self, c: ConstraintId) -> &CoverOracle {
        &self.oracles[c.0]
    }

    /// The cover of constraint `c` at `α`.
    pub fn cover(&self, instance: &Instance, c: ConstraintId, alpha: &Tuple) -> Result<Relation> {
        self.oracles[c.0].cover(instance.relation(c), alpha)
    }

    /// Runs [`verify_cover`] on every tuple of every constraint.
    pub fn verify(&self, instance: &Instance) -> Result<()> {
        for c in instance.constraint_ids() {
            for alpha in instance.relation(c).iter() {
                self.verified_cover(instance, c, alpha)?;
            }
        }
        Ok(())
    }

    /// [`OracleMap::cover`] followed by [`verify_cover`].
    pub fn verified_cover(&self, instance: &Instance, c: ConstraintId, alpha: &Tuple) -> Result<Relation> {
        let cover = self.cover(instance, c, alpha)?;
        verify_cover(instance.relation(c), alpha, &cover).map_err(|v| Error::CoverRejected {
            constraint: instance.constraint(c).name.clone(),
            alpha: alpha.to_bit_string(),
            violation: v.to_string(),
        })?;
        Ok(cover)
    }
}
