use std::fmt;

use smallvec::SmallVec;

use crate::error::Error;

const WORD: usize = 64;

/// A fixed-length Boolean vector.
///
/// Position `i` holds the value of the `i`-th scope entry of the owning
/// relation. Tuples order lexicographically by their bit string (position 0
/// is the most significant bit), which is the canonical tuple order used
/// everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    len: u32,
    words: SmallVec<[u64; 1]>,
}

#[inline]
fn locate(i: usize) -> (usize, u64) {
    (i / WORD, 1u64 << (WORD - 1 - i % WORD))
}

impl Tuple {
    pub fn zeros(len: usize) -> Self {
        let words = SmallVec::from_elem(0, len.div_ceil(WORD));
        Tuple { len: len as u32, words }
    }

    pub fn ones(len: usize) -> Self {
        let mut t = Self::zeros(len);
        for i in 0..len {
            t.set(i, true);
        }
        t
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut t = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                t.set(i, true);
            }
        }
        t
    }

    /// Builds a tuple of length `len` whose position `i` is bit
    /// `len - 1 - i` of `value`, so that `from_index(k, len)` enumerates
    /// tuples in canonical order as `k` counts up.
    pub fn from_index(value: u64, len: usize) -> Self {
        assert!(len <= 64, "from_index supports at most 64 positions");
        Self::from_bits((0..len).map(|i| (value >> (len - 1 - i)) & 1 == 1))
    }

    /// Inverse of [`Tuple::from_index`].
    pub fn index(&self) -> u64 {
        assert!(self.len() <= 64, "index supports at most 64 positions");
        self.iter().fold(0u64, |acc, b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        let (w, m) = locate(i);
        self.words[w] & m != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len());
        let (w, m) = locate(i);
        if value {
            self.words[w] |= m;
        } else {
            self.words[w] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len());
        let (w, m) = locate(i);
        self.words[w] ^= m;
    }

    /// `self ⊕ i`.
    #[inline]
    pub fn flipped(&self, i: usize) -> Tuple {
        let mut t = self.clone();
        t.flip(i);
        t
    }

    /// `self ⊕ i ⊕ j`; with `i == j` this is `self` again.
    #[inline]
    pub fn flipped2(&self, i: usize, j: usize) -> Tuple {
        let mut t = self.clone();
        t.flip(i);
        t.flip(j);
        t
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn parity(&self) -> bool {
        self.count_ones() % 2 == 1
    }

    pub fn xor(&self, other: &Tuple) -> Tuple {
        assert_eq!(self.len, other.len, "xor of tuples with different lengths");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Tuple { len: self.len, words }
    }

    /// Positions where `self` and `other` differ (the set `f △ g`).
    pub fn diff(&self, other: &Tuple) -> Vec<usize> {
        assert_eq!(self.len, other.len, "diff of tuples with different lengths");
        let x = self.xor(other);
        (0..x.len()).filter(|&i| x.get(i)).collect()
    }

    pub fn complement(&self) -> Tuple {
        let mut t = self.clone();
        for i in 0..t.len() {
            t.flip(i);
        }
        t
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// The tuple restricted to `positions`, in the given order.
    pub fn select(&self, positions: &[usize]) -> Tuple {
        Tuple::from_bits(positions.iter().map(|&p| self.get(p)))
    }

    pub fn concat(&self, other: &Tuple) -> Tuple {
        Tuple::from_bits(self.iter().chain(other.iter()))
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn parse(s: &str) -> Result<Tuple, Error> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "invalid character {other:?} in tuple {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Tuple::from_bits(bits))
    }
}

impl fmt::Debug for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tuple({})", self.to_bit_string())
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl std::str::FromStr for Tuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tuple::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_lexicographic() {
        let mut ts: Vec<Tuple> = ["110", "001", "000", "100", "011"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        ts.sort();
        let strs: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
        assert_eq!(strs, ["000", "001", "011", "100", "110"]);
    }

    #[test]
    fn wide_tuples_span_words() {
        let mut t = Tuple::zeros(130);
        t.set(0, true);
        t.set(64, true);
        t.set(129, true);
        assert_eq!(t.count_ones(), 3);
        assert!(t.get(64) && !t.get(63));
        let s = t.to_bit_string();
        assert_eq!(Tuple::parse(&s).unwrap(), t);
        assert!(Tuple::zeros(130) < t);
    }

    #[test]
    fn index_round_trip() {
        for k in 0..16 {
            assert_eq!(Tuple::from_index(k, 4).index(), k);
        }
        assert_eq!(Tuple::from_index(0b100, 3).to_string(), "100");
    }

    #[test]
    fn rejects_bad_characters() {
        assert!(Tuple::parse("01x").is_err());
    }
}
