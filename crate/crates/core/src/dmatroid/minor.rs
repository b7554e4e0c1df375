use std::collections::HashMap;

use crate::dmatroid::{Relation, Tuple};

/// The ternary interference Δ-matroid `{000, 110, 101, 011, 111}`.
pub fn interference_matroid() -> Relation {
    Relation::parse(3, &["000", "110", "101", "011", "111"]).expect("static tuples")
}

/// Bit masks over `{0,1}^3` (bit `k` set when the tuple with index `k` is
/// present) of every copy of the interference matroid obtainable by
/// permuting positions and flipping values.
fn interference_images() -> Vec<u8> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let base = interference_matroid();
    let mut images = Vec::with_capacity(48);
    for perm in PERMS {
        for flip in 0u64..8 {
            let mut mask = 0u8;
            for t in base.iter() {
                let k = t.select(&perm).index() ^ flip;
                mask |= 1 << k;
            }
            images.push(mask);
        }
    }
    images.sort_unstable();
    images.dedup();
    images
}

impl Relation {
    /// Whether fixing some `arity - 3` positions leaves a copy of the
    /// interference matroid, up to renaming and flipping the remaining three.
    ///
    /// Relations of arity below 3 have no such minor.
    pub fn contains_interference_minor(&self) -> bool {
        let n = self.arity();
        if n < 3 {
            return false;
        }
        let images = interference_images();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let triple = [i, j, k];
                    let rest: Vec<usize> = (0..n).filter(|p| !triple.contains(p)).collect();
                    let mut groups: HashMap<Tuple, u8> = HashMap::new();
                    for t in self.iter() {
                        let idx = t.select(&triple).index();
                        *groups.entry(t.select(&rest)).or_default() |= 1 << idx;
                    }
                    if groups.values().any(|m| images.binary_search(m).is_ok()) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_count() {
        let images = interference_images();
        assert!(images.len() > 1 && images.len() <= 48);
        assert!(images.iter().all(|m| m.count_ones() == 5));
    }

    #[test]
    fn small_arities_are_free() {
        assert!(!Relation::full(2).contains_interference_minor());
    }
}
