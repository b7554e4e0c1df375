use std::collections::BTreeSet;
use std::fmt;

use crate::dmatroid::Tuple;
use crate::error::{Error, Result};

/// A Boolean relation over positions `0..arity`, stored as a sorted,
/// deduplicated tuple list.
///
/// The relation itself carries no variable names; [`NamedRelation`] adds a
/// scope. An empty tuple list is a legal value (it is what identifying two
/// variables can produce) and is distinct from the arity-0 relation holding
/// the single empty tuple.
///
/// [`NamedRelation`]: crate::dmatroid::NamedRelation
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    tuples: Vec<Tuple>,
}

/// A set of scope positions to flip.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlipSet(BTreeSet<usize>);

impl FlipSet {
    pub fn new<I: IntoIterator<Item = usize>>(positions: I, arity: usize) -> Result<Self> {
        let set: BTreeSet<usize> = positions.into_iter().collect();
        if let Some(&p) = set.iter().find(|&&p| p >= arity) {
            return Err(Error::PositionOutOfRange { position: p, arity });
        }
        Ok(FlipSet(set))
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl Relation {
    pub fn new<I: IntoIterator<Item = Tuple>>(arity: usize, tuples: I) -> Result<Self> {
        let mut tuples: Vec<Tuple> = tuples.into_iter().collect();
        if let Some(t) = tuples.iter().find(|t| t.len() != arity) {
            return Err(Error::ArityMismatch { expected: arity, found: t.len() });
        }
        tuples.sort();
        tuples.dedup();
        Ok(Relation { arity, tuples })
    }

    /// Internal constructor for tuple lists already known to have the right length.
    pub(crate) fn from_sorted_unchecked(arity: usize, mut tuples: Vec<Tuple>) -> Self {
        debug_assert!(tuples.iter().all(|t| t.len() == arity));
        tuples.sort();
        tuples.dedup();
        Relation { arity, tuples }
    }

    /// Parses bit strings. Every string must have length `arity`.
    pub fn parse<S: AsRef<str>>(arity: usize, tuples: &[S]) -> Result<Self> {
        let parsed = tuples
            .iter()
            .map(|s| Tuple::parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Relation::new(arity, parsed)
    }

    /// Parses a nonempty list of bit strings, taking the arity from the first.
    ///
    /// ```
    /// use edgecsp::Relation;
    /// let r = Relation::from_strs(&["11", "00"]).unwrap();
    /// assert_eq!(r.arity(), 2);
    /// assert_eq!(r.to_strings(), ["00", "11"]);
    /// ```
    pub fn from_strs<S: AsRef<str>>(tuples: &[S]) -> Result<Self> {
        let first = tuples.first().ok_or(Error::EmptyRelation)?;
        Relation::parse(first.as_ref().len(), tuples)
    }

    /// All of `{0,1}^arity`.
    pub fn full(arity: usize) -> Self {
        assert!(arity < 32, "full relation of arity {arity} is too large to list");
        let tuples = (0..1u64 << arity).map(|k| Tuple::from_index(k, arity)).collect();
        Relation { arity, tuples }
    }

    /// All tuples of the given arity whose ones-count has parity `odd`.
    pub fn parity_class(arity: usize, odd: bool) -> Self {
        let full = Relation::full(arity);
        full.filter(|t| t.parity() == odd)
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn iter(&self) -> std::slice::Iter<'_, Tuple> {
        self.tuples.iter()
    }

    /// Canonically first tuple.
    pub fn first(&self) -> Option<&Tuple> {
        self.tuples.first()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.tuples.iter().map(Tuple::to_bit_string).collect()
    }

    /// Membership with an arity check.
    pub fn contains(&self, t: &Tuple) -> Result<bool> {
        if t.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: t.len() });
        }
        Ok(self.has(t))
    }

    /// Membership without the arity check; a tuple of the wrong length is
    /// simply absent.
    #[inline]
    pub fn has(&self, t: &Tuple) -> bool {
        self.tuples.binary_search(t).is_ok()
    }

    pub fn filter<F: FnMut(&Tuple) -> bool>(&self, mut keep: F) -> Relation {
        Relation {
            arity: self.arity,
            tuples: self.tuples.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.tuples.iter().all(|t| other.has(t))
    }

    /// Tuples of `self` that are not in `other`.
    pub fn difference(&self, other: &Relation) -> Relation {
        self.filter(|t| !other.has(t))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(Relation::from_sorted_unchecked(
            self.arity,
            self.tuples.iter().chain(&other.tuples).cloned().collect(),
        ))
    }

    /// Exhaustive check of the symmetric exchange axiom: for all `f, g` and
    /// `v ∈ f △ g` there is `u ∈ f △ g` (possibly `u = v`) with
    /// `f ⊕ {u, v}` in the relation.
    pub fn is_delta_matroid(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyRelation);
        }
        for f in &self.tuples {
            for g in &self.tuples {
                let diff = f.diff(g);
                for &v in &diff {
                    let exchange = |u: usize| {
                        if u == v {
                            f.flipped(v)
                        } else {
                            f.flipped2(u, v)
                        }
                    };
                    if !diff.iter().any(|&u| self.has(&exchange(u))) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Whether all tuples share the parity of their ones-count. Vacuously true
    /// for the empty relation.
    pub fn is_even(&self) -> bool {
        match self.tuples.first() {
            None => true,
            Some(t0) => {
                let p = t0.parity();
                self.tuples.iter().all(|t| t.parity() == p)
            }
        }
    }

    /// `is_delta_matroid() && is_even()`; false for the empty relation.
    pub fn is_even_delta_matroid(&self) -> bool {
        !self.is_empty() && self.is_even() && self.is_delta_matroid().unwrap_or(false)
    }

    /// `M × N`: scopes concatenate.
    pub fn direct_product(&self, other: &Relation) -> Relation {
        let mut tuples = Vec::with_capacity(self.len() * other.len());
        for a in &self.tuples {
            for b in &other.tuples {
                tuples.push(a.concat(b));
            }
        }
        Relation::from_sorted_unchecked(self.arity + other.arity, tuples)
    }

    /// `M_{w1=w2}`: keep tuples agreeing at the two positions, then drop both.
    pub fn identify(&self, w1: usize, w2: usize) -> Result<Relation> {
        self.check_position(w1)?;
        self.check_position(w2)?;
        if w1 == w2 {
            return Err(Error::InvalidInstance(format!(
                "cannot identify position {w1} with itself"
            )));
        }
        let keep: Vec<usize> = (0..self.arity).filter(|&p| p != w1 && p != w2).collect();
        let tuples = self
            .tuples
            .iter()
            .filter(|t| t.get(w1) == t.get(w2))
            .map(|t| t.select(&keep))
            .collect();
        Ok(Relation::from_sorted_unchecked(keep.len(), tuples))
    }

    /// `M_{v=c}`: fix position `v` to `c` and project it out.
    pub fn fix(&self, v: usize, c: bool) -> Result<Relation> {
        self.check_position(v)?;
        let keep: Vec<usize> = (0..self.arity).filter(|&p| p != v).collect();
        let tuples = self
            .tuples
            .iter()
            .filter(|t| t.get(v) == c)
            .map(|t| t.select(&keep))
            .collect();
        Ok(Relation::from_sorted_unchecked(keep.len(), tuples))
    }

    /// XOR every tuple with the indicator of `flips`.
    pub fn flip_values(&self, flips: &FlipSet) -> Relation {
        let tuples = self
            .tuples
            .iter()
            .map(|t| {
                let mut t = t.clone();
                for p in flips.positions() {
                    t.flip(p);
                }
                t
            })
            .collect();
        Relation::from_sorted_unchecked(self.arity, tuples)
    }

    /// Reorders the scope: position `i` of the result is position `order[i]`
    /// of `self`. `order` must be a permutation of `0..arity`.
    pub fn permute(&self, order: &[usize]) -> Result<Relation> {
        let mut seen = vec![false; self.arity];
        if order.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: order.len() });
        }
        for &p in order {
            self.check_position(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInstance(format!("position {p} repeated in permutation")));
            }
        }
        let tuples = self.tuples.iter().map(|t| t.select(order)).collect();
        Ok(Relation::from_sorted_unchecked(self.arity, tuples))
    }

    /// `dR = { (x1⊕x2, x2⊕x3, …, xn⊕x1) : T ∈ R }`.
    pub fn d_transform(&self) -> Result<Relation> {
        let n = self.arity;
        if n < 2 {
            return Err(Error::ArityTooSmall { arity: n, needed: 2 });
        }
        let tuples = self
            .tuples
            .iter()
            .map(|t| Tuple::from_bits((0..n).map(|i| t.get(i) ^ t.get((i + 1) % n))))
            .collect();
        Ok(Relation::from_sorted_unchecked(n, tuples))
    }

    /// Invariance under complementing every coordinate at once.
    pub fn is_self_complementary(&self) -> bool {
        self.tuples.iter().all(|t| self.has(&t.complement()))
    }

    /// Even-weight tuples.
    pub fn even_part(&self) -> Relation {
        self.filter(|t| !t.parity())
    }

    /// Odd-weight tuples.
    pub fn odd_part(&self) -> Relation {
        self.filter(|t| t.parity())
    }

    fn check_position(&self, p: usize) -> Result<()> {
        if p >= self.arity {
            Err(Error::PositionOutOfRange { position: p, arity: self.arity })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}]{{{}}}", self.arity, self.to_strings().join(","))
    }
}

impl<'a> IntoIterator for &'a Relation {
    type Item = &'a Tuple;
    type IntoIter = std::slice::Iter<'a, Tuple>;
    fn into_iter(self) -> Self::IntoIter {
        self.tuples.iter()
    }
}
