use std::collections::VecDeque;
use std::fmt;

use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};

fn member(m: &Relation, alpha: &Tuple) -> Result<()> {
    if m.contains(alpha)? {
        Ok(())
    } else {
        Err(Error::NotAMember { tuple: alpha.to_bit_string() })
    }
}

fn neighbors_unchecked(m: &Relation, alpha: &Tuple) -> Vec<Tuple> {
    let n = m.arity();
    let mut out = Vec::new();
    for u in 0..n {
        if m.has(&alpha.flipped(u)) {
            continue;
        }
        for v in (0..n).filter(|&v| v != u) {
            let beta = alpha.flipped2(u, v);
            if m.has(&beta) {
                out.push(beta);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Tuples `α ⊕ u ⊕ v` of `m` with `α ⊕ u ∉ m`, sorted.
pub fn even_neighbors(m: &Relation, alpha: &Tuple) -> Result<Vec<Tuple>> {
    member(m, alpha)?;
    Ok(neighbors_unchecked(m, alpha))
}

/// Everything reachable from `α` by even-neighbor steps, `α` included.
pub fn reachable_set(m: &Relation, alpha: &Tuple) -> Result<Relation> {
    member(m, alpha)?;
    Ok(ReachabilityGraph::new(m).reachable(alpha))
}

/// The even-neighbor graph of a relation, over its tuples in sorted order.
#[derive(Clone, Debug)]
pub struct ReachabilityGraph {
    relation: Relation,
    adjacency: Vec<Vec<usize>>,
}

impl ReachabilityGraph {
    pub fn new(m: &Relation) -> Self {
        let index = |t: &Tuple| m.tuples().binary_search(t).expect("member");
        let adjacency = m.iter().map(|a| neighbors_unchecked(m, a).iter().map(index).collect()).collect();
        ReachabilityGraph { relation: m.clone(), adjacency }
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    /// Indices into `relation().tuples()` of the even-neighbors of tuple `i`.
    /// The relation is directed: `α ⊕ u ∉ M` need not imply `β ⊕ v ∉ M`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Reachable tuples from `alpha`; empty when `alpha` is not a member.
    pub fn reachable(&self, alpha: &Tuple) -> Relation {
        let Ok(start) = self.relation.tuples().binary_search(alpha) else {
            return Relation::new(self.relation.arity(), []).expect("empty relation of known arity");
        };
        let mut seen = vec![false; self.adjacency.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.adjacency[i] {
                if !std::mem::replace(&mut seen[j], true) {
                    queue.push_back(j);
                }
            }
        }
        let kept = self.relation.iter().zip(&seen).filter(|(_, &s)| s).map(|(t, _)| t.clone());
        Relation::new(self.relation.arity(), kept).expect("subset of a relation")
    }
}

/// Why a proposed cover `M_α` fails, numbered after the three cover
/// conditions. Item 0 means `α ∉ M` or an arity mismatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverViolation {
    pub item: u8,
    pub detail: String,
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}: {}", self.item, self.detail)
    }
}

fn violation(item: u8, detail: String) -> std::result::Result<(), CoverViolation> {
    Err(CoverViolation { item, detail })
}

/// Checks that `cover` can serve as `M_α`: it is an even Δ-matroid, holds
/// every tuple reachable from `α`, and from any reachable `γ` a two-step
/// move into `cover ∖ M` passes through `M` both ways.
pub fn verify_cover(m: &Relation, alpha: &Tuple, cover: &Relation) -> std::result::Result<(), CoverViolation> {
    if alpha.len() != m.arity() || cover.arity() != m.arity() {
        return violation(0, format!("arities differ: M {}, α {}, cover {}", m.arity(), alpha.len(), cover.arity()));
    }
    if !m.has(alpha) {
        return violation(0, format!("{} is not in M", alpha.to_bit_string()));
    }
    if !cover.is_even_delta_matroid() {
        return violation(1, "the cover is not an even Δ-matroid".into());
    }
    let reach = ReachabilityGraph::new(m).reachable(alpha);
    if let Some(g) = reach.iter().find(|g| !cover.has(g)) {
        return violation(2, format!("reachable {} is missing", g.to_bit_string()));
    }
    let n = m.arity();
    for g in reach.iter() {
        for u in 0..n {
            for v in u + 1..n {
                let d = g.flipped2(u, v);
                if cover.has(&d) && !m.has(&d) && !(m.has(&g.flipped(u)) && m.has(&g.flipped(v))) {
                    return violation(
                        3,
                        format!(
                            "{} reaches {} outside M, but a single flip leaves M",
                            g.to_bit_string(),
                            d.to_bit_string()
                        ),
                    );
                }
            }
        }
    }
    Ok(())
}
