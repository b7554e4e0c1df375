//! Perfect matchings as edge CSPs, and matching realizable relations.
//!
//! A graph becomes an instance by putting one variable on every edge and the
//! one-hot relation `M_d` on every node of degree `d`. The optimum number of
//! inconsistencies is then `|V| − 2ν(G)`.
//!
//! ```
//! use edgecsp::matching::{graph_to_instance, SimpleGraph};
//!
//! let k3 = SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
//! let best = edgecsp::optimize(&graph_to_instance(&k3).unwrap()).unwrap();
//! assert_eq!(best.count, 1);
//! ```

mod pairs;

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance, VarId};
use crate::solver::{optimize_unchecked, NoopObserver};

pub use pairs::{admissible_pairs, check_pair_decomposition, counterexample_arity6};

/// Largest number of pins [`realize`] accepts.
pub const MAX_PINS: usize = 20;

/// Largest graph the exhaustive matcher handles.
pub const MAX_BRUTE_NODES: usize = 64;

/// `M_n`: exactly one position is set.
pub fn matching_relation(n: usize) -> Result<Relation> {
    if n == 0 {
        return Err(Error::ArityTooSmall { arity: 0, needed: 1 });
    }
    Relation::new(n, (0..n).map(|i| Tuple::from_bits((0..n).map(|j| i == j))))
}

/// An undirected loopless multigraph with named nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    nodes: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(nodes: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &nodes {
            if !seen.insert(n.as_str()) {
                return Err(Error::Graph(format!("node {n:?} listed twice")));
            }
        }
        for &(a, b) in &edges {
            if a >= nodes.len() || b >= nodes.len() {
                return Err(Error::Graph(format!("edge ({a}, {b}) uses a missing node")));
            }
            if a == b {
                return Err(Error::Graph(format!("loop at node {:?}", nodes[a])));
            }
        }
        Ok(SimpleGraph { nodes, edges })
    }

    /// Nodes named `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        SimpleGraph::new((0..n).map(|i| i.to_string()).collect(), edges.to_vec())
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_by_name(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// The subgraph on the nodes where `keep` holds.
    pub fn induced(&self, keep: &[bool]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (v, name) in self.nodes.iter().enumerate().filter(|&(v, _)| keep[v]) {
            index[v] = nodes.len();
            nodes.push(name.clone());
        }
        let edges =
            self.edges.iter().filter(|&&(a, b)| keep[a] && keep[b]).map(|&(a, b)| (index[a], index[b])).collect();
        SimpleGraph { nodes, edges }
    }

    fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.nodes.len() > MAX_BRUTE_NODES {
            return Err(Error::Graph(format!("more than {MAX_BRUTE_NODES} nodes")));
        }
        let mut adj = vec![0u64; self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(adj)
    }

    /// `ν(G)` by exhaustive search with memoization.
    pub fn max_matching_size(&self) -> Result<usize> {
        fn go(mask: u64, adj: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
            if mask.count_ones() < 2 {
                return 0;
            }
            if let Some(&m) = memo.get(&mask) {
                return m;
            }
            let v = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << v);
            let mut best = go(rest, adj, memo);
            let mut nb = adj[v] & rest;
            while nb != 0 {
                let u = nb.trailing_zeros();
                best = best.max(1 + go(rest & !(1 << u), adj, memo));
                nb &= nb - 1;
            }
            memo.insert(mask, best);
            best
        }
        let adj = self.adjacency_masks()?;
        let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
        Ok(go(all, &adj, &mut HashMap::new()))
    }

    /// Whether the graph has a perfect matching. The empty graph has one.
    pub fn has_perfect_matching(&self) -> Result<bool> {
        if self.nodes.len() % 2 == 1 {
            return Ok(false);
        }
        Ok(2 * self.max_matching_size()? == self.nodes.len())
    }
}

/// One variable per edge and `M_deg(v)` at every node `v`.
pub fn graph_to_instance(g: &SimpleGraph) -> Result<Instance> {
    let mut scopes: Vec<Vec<VarId>> = vec![Vec::new(); g.num_nodes()];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        scopes[a].push(VarId(i));
        scopes[b].push(VarId(i));
    }
    let constraints = scopes
        .into_iter()
        .enumerate()
        .map(|(v, scope)| {
            if scope.is_empty() {
                return Err(Error::Graph(format!("node {:?} is isolated", g.nodes[v])));
            }
            Ok(Constraint { name: g.nodes[v].clone(), relation: matching_relation(scope.len())?, scope })
        })
        .collect::<Result<Vec<_>>>()?;
    let names = g.edges.iter().enumerate().map(|(i, &(a, b))| format!("e{i}:{}-{}", g.nodes[a], g.nodes[b])).collect();
    Instance::new(names, constraints)
}

/// Perfect matching decided by the solver on [`graph_to_instance`].
pub fn solver_perfect_matching(g: &SimpleGraph) -> Result<bool> {
    if g.num_nodes() == 0 {
        return Ok(true);
    }
    if (0..g.num_nodes()).any(|v| g.degree(v) == 0) {
        return Ok(false);
    }
    let instance = graph_to_instance(g)?;
    Ok(optimize_unchecked(&instance, instance.initial_labeling(), &mut NoopObserver)?.count == 0)
}

/// `{T : G_T has a perfect matching}`, where `G_T` deletes the pins set in `T`.
///
/// Every `G_T` is decided twice, by the solver and by the exhaustive
/// matcher; a disagreement is an [`Error::Internal`].
pub fn realize(g: &SimpleGraph, pins: &[usize]) -> Result<Relation> {
    let a = pins.len();
    if a == 0 || a > MAX_PINS {
        return Err(Error::ArityOutOfRange { arity: a, max: MAX_PINS });
    }
    let mut seen = HashSet::new();
    for &p in pins {
        if p >= g.num_nodes() {
            return Err(Error::Graph(format!("pin {p} is not a node")));
        }
        if !seen.insert(p) {
            return Err(Error::Graph(format!("pin {:?} listed twice", g.nodes[p])));
        }
    }
    let members = (0..1u64 << a)
        .into_par_iter()
        .map(|i| {
            let t = Tuple::from_index(i, a);
            let mut keep = vec![true; g.num_nodes()];
            for (pos, &p) in pins.iter().enumerate() {
                keep[p] = !t.get(pos);
            }
            let sub = g.induced(&keep);
            let by_solver = solver_perfect_matching(&sub)?;
            let direct = sub.has_perfect_matching()?;
            if by_solver != direct {
                return Err(Error::Internal(format!(
                    "solver says {by_solver} but the direct matcher says {direct} for deletion {}",
                    t.to_bit_string()
                )));
            }
            Ok(direct.then_some(t))
        })
        .collect::<Result<Vec<_>>>()?;
    Relation::new(a, members.into_iter().flatten())
}

/// The graph file: node names, edges as name pairs, and optional pins.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub nodes: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub pins: Vec<String>,
}

impl GraphSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The graph and the pin indices.
    pub fn build(&self) -> Result<(SimpleGraph, Vec<usize>)> {
        let g = SimpleGraph::new(self.nodes.clone(), Vec::new())?;
        let lookup = |n: &String| g.node_by_name(n).ok_or_else(|| Error::Graph(format!("unknown node {n:?}")));
        let edges = self.edges.iter().map(|[a, b]| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>>>()?;
        let pins = self.pins.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        Ok((SimpleGraph::new(self.nodes.clone(), edges)?, pins))
    }
}

/// A five-pin gadget whose realized relation is
/// `{10000, 01000, 00100, 00010, 11001, 10101, 10011}`.
///
/// Pins are nodes `0..5`; nodes 5 and 6 are internal.
pub fn five_pin_gadget() -> (SimpleGraph, Vec<usize>) {
    let g = SimpleGraph::from_edges(7, &[(0, 4), (1, 4), (1, 5), (1, 6), (2, 6), (3, 5)]).expect("valid graph");
    (g, (0..5).collect())
}

/// A triangle on three pins, realizing `{001, 010, 100, 111}`.
pub fn three_pin_gadget() -> (SimpleGraph, Vec<usize>) {
    let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).expect("valid graph");
    (g, (0..3).collect())
}

/// The five-pin relation realized by [`five_pin_gadget`].
pub const FIVE_PIN_RELATION: [&str; 7] = ["10000", "01000", "00100", "00010", "11001", "10101", "10011"];

/// The three-pin relation realized by [`three_pin_gadget`].
pub const THREE_PIN_RELATION: [&str; 4] = ["001", "010", "100", "111"];

/// A 14-node graph built from both gadgets: the five pins go to outer nodes
/// `a`, `b`, `c` and to two triangle corners, the third corner goes to `d`,
/// and the outer nodes are joined by `a-b` and `c-d`.
pub fn gadget_graph() -> SimpleGraph {
    let names = ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "y0", "y1", "y2", "a", "b", "c", "d"];
    let mut edges = vec![(0, 4), (1, 4), (1, 5), (1, 6), (2, 6), (3, 5), (7, 8), (8, 9), (7, 9)];
    edges.extend([(0, 10), (1, 11), (2, 12), (3, 7), (4, 8), (9, 13), (10, 11), (12, 13)]);
    SimpleGraph::new(names.map(String::from).to_vec(), edges).expect("valid graph")
}

/// [`gadget_graph`] with each gadget merged into one constraint over its
/// outgoing edges. It has a zero-inconsistency labeling exactly when the
/// graph has a perfect matching.
pub fn merged_gadget_instance() -> Instance {
    let vars = ["x0-a", "x1-b", "x2-c", "x3-y0", "x4-y1", "y2-d", "a-b", "c-d"];
    let m2 = matching_relation(2).expect("n > 0");
    let c = |name: &str, scope: &[usize], relation: Relation| Constraint {
        name: name.into(),
        scope: scope.iter().map(|&v| VarId(v)).collect(),
        relation,
    };
    let constraints = vec![
        c("X", &[0, 1, 2, 3, 4], Relation::from_strs(&FIVE_PIN_RELATION).expect("fixed tuples")),
        c("Y", &[3, 4, 5], Relation::from_strs(&THREE_PIN_RELATION).expect("fixed tuples")),
        c("a", &[0, 6], m2.clone()),
        c("b", &[1, 6], m2.clone()),
        c("c", &[2, 7], m2.clone()),
        c("d", &[5, 7], m2),
    ];
    Instance::new(vars.map(String::from).to_vec(), constraints).expect("valid instance")
}
