use std::collections::BTreeMap;

use crate::dmatroid::Tuple;
use crate::error::{Error, Result};
use crate::instance::{ConstraintId, Instance};

/// A value for every half-edge, stored as one tuple per constraint: entry
/// `i` of the tuple for `C` is the label of `{scope(C)[i], C}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLabeling {
    tuples: Vec<Tuple>,
}

impl EdgeLabeling {
    pub fn from_tuples(tuples: Vec<Tuple>) -> Self {
        EdgeLabeling { tuples }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn into_tuples(self) -> Vec<Tuple> {
        self.tuples
    }

    /// `f(C)`.
    pub fn tuple(&self, c: ConstraintId) -> &Tuple {
        &self.tuples[c.0]
    }

    pub fn tuple_mut(&mut self, c: ConstraintId) -> &mut Tuple {
        &mut self.tuples[c.0]
    }

    pub fn set_tuple(&mut self, c: ConstraintId, t: Tuple) {
        self.tuples[c.0] = t;
    }

    /// Number of half-edges on which the two labelings differ.
    pub fn distance(&self, other: &EdgeLabeling) -> usize {
        self.tuples.iter().zip(&other.tuples).map(|(a, b)| a.xor(b).count_ones()).sum()
    }

    pub(crate) fn from_json(instance: &Instance, text: &str) -> Result<Self> {
        let map: BTreeMap<String, u8> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut tuples: Vec<Tuple> =
            instance.constraints().iter().map(|c| Tuple::zeros(c.scope.len())).collect();
        let mut seen = 0usize;
        for (key, value) in &map {
            let (var, con) = key
                .rsplit_once('@')
                .ok_or_else(|| Error::Parse(format!("key {key:?} is not of the form var@constraint")))?;
            let v = instance
                .var_by_name(var)
                .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
            let c = instance
                .constraint_by_name(con)
                .ok_or_else(|| Error::LabelingMismatch(format!("unknown constraint {con:?}")))?;
            let p = instance
                .position(v, c)
                .ok_or_else(|| Error::LabelingMismatch(format!("{key:?} is not a half-edge")))?;
            match value {
                0 => {}
                1 => tuples[c.0].set(p, true),
                other => return Err(Error::Parse(format!("label {other} at {key:?} is not 0 or 1"))),
            }
            seen += 1;
        }
        let total = 2 * instance.num_vars();
        if seen != total {
            return Err(Error::LabelingMismatch(format!("{seen} of {total} half-edges labeled")));
        }
        Ok(EdgeLabeling { tuples })
    }

    pub(crate) fn to_json(&self, instance: &Instance) -> String {
        let mut map = BTreeMap::new();
        for (ci, c) in instance.constraints().iter().enumerate() {
            for (p, &v) in c.scope.iter().enumerate() {
                let key = format!("{}@{}", instance.var_name(v), c.name);
                map.insert(key, self.tuples[ci].get(p) as u8);
            }
        }
        serde_json::to_string(&map).expect("labeling serializes")
    }
}

/// Whether two valid labelings have inconsistency counts of equal parity.
pub fn parity_invariant_check(instance: &Instance, f: &EdgeLabeling, g: &EdgeLabeling) -> Result<bool> {
    for h in [f, g] {
        instance.check_labeling(h)?;
        if let Some(c) = instance.first_violation(h) {
            return Err(Error::InvalidLabeling(instance.constraint(c).name.clone()));
        }
    }
    Ok(instance.inconsistency_count(f) % 2 == instance.inconsistency_count(g) % 2)
}
