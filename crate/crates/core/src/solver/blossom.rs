
use crate::error::{Error, Result};
use crate::instance::{ConstraintId, EdgeLabeling, Instance, VarId};
use crate::solver::forest::{Forest, Node};
use crate::walks::{validate_fdag, DagEdge, EdgeDir, FDag, Walk};

/// A closed walk `b0 C1 b1 … Ck bk` with `b0 = bk`, plus the timestamps that
/// make it two directed paths meeting at `C_ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlossomData {
    pub walk: Walk,
    /// 1-based index of the constraint with the largest timestamp.
    pub ell: usize,
    /// `times[i - 1]` is the timestamp of `C_i`.
    pub times: Vec<usize>,
    /// The tree path whose flip moved the inconsistency onto `b0`, when the
    /// two branches met below a constraint node.
    pub stem: Option<Walk>,
    /// Distinct constraints of the walk in order of first appearance.
    pub constraints: Vec<ConstraintId>,
}

impl BlossomData {
    pub(crate) fn new(walk: Walk, ell: usize, times: Vec<usize>, stem: Option<Walk>) -> BlossomData {
        let mut constraints: Vec<ConstraintId> = Vec::new();
        for &c in walk.constraints() {
            if !constraints.contains(&c) {
                constraints.push(c);
            }
        }
        BlossomData { walk, ell, times, stem, constraints }
    }

    pub fn k(&self) -> usize {
        self.walk.len()
    }

    /// `b_i`.
    pub fn var(&self, i: usize) -> VarId {
        self.walk.vars()[i]
    }

    /// `C_i` for `i` in `1..=k`.
    pub fn constraint(&self, i: usize) -> ConstraintId {
        self.walk.constraints()[i - 1]
    }

    /// `t_i` for `i` in `1..=k`.
    pub fn time(&self, i: usize) -> usize {
        self.times[i - 1]
    }

    /// The two-path DAG `b0 C1 … b_{ell-1} C_ell` and `bk Ck … b_ell C_ell`.
    pub fn dag(&self) -> FDag {
        let mut dag = FDag { var_nodes: self.walk.vars()[..self.k()].to_vec(), edges: Vec::new() };
        let edge = |var, i: usize, dir| DagEdge { var, constraint: self.constraint(i), time: self.time(i), dir };
        for i in 1..=self.ell {
            dag.edges.push(edge(self.var(i - 1), i, EdgeDir::IntoConstraint));
            if i < self.ell {
                dag.edges.push(edge(self.var(i), i, EdgeDir::OutOfConstraint));
            }
        }
        for i in self.ell..=self.k() {
            dag.edges.push(edge(self.var(i), i, EdgeDir::IntoConstraint));
            if i > self.ell {
                dag.edges.push(edge(self.var(i - 1), i, EdgeDir::OutOfConstraint));
            }
        }
        dag
    }

    /// Checks that `b0` is the only inconsistent variable of the walk and
    /// that the two-path DAG is an f-DAG.
    pub fn check(&self, instance: &Instance, f: &EdgeLabeling) -> Result<()> {
        let k = self.k();
        if k < 2 || self.var(0) != self.var(k) || self.walk.is_half_integral() {
            return Err(Error::Internal(format!("blossom walk {:?} is not closed", self.walk)));
        }
        if self.times.len() != k || self.ell == 0 || self.ell > k {
            return Err(Error::Internal("blossom timestamps do not fit the walk".into()));
        }
        if instance.is_consistent(f, self.var(0)) {
            return Err(Error::Internal("blossom base is consistent".into()));
        }
        if let Some(i) = (1..k).find(|&i| !instance.is_consistent(f, self.var(i))) {
            return Err(Error::Internal(format!("blossom variable b{i} is inconsistent")));
        }
        let bad = validate_fdag(instance, f, &self.dag());
        if let Some(v) = bad.first() {
            return Err(Error::Internal(format!("blossom DAG is not an f-DAG: {v}")));
        }
        Ok(())
    }
}

/// Reads off the blossom closed by the edge `w C^t` and returns the labeling
/// it lives in (after the stem flip when the branches meet below a
/// constraint node).
pub(crate) fn extract_blossom(
    instance: &Instance,
    forest: &Forest,
    f: &EdgeLabeling,
    v: VarId,
    node: usize,
    w: VarId,
) -> Result<(EdgeLabeling, BlossomData)> {
    let cn = forest.cnode(node);
    let from_v = forest.ancestors(Node::Var(v));
    let from_w = forest.ancestors(Node::Var(w));
    let lca = *from_w
        .iter()
        .find(|n| from_v.contains(n))
        .ok_or_else(|| Error::Internal("blossom endpoints lie in different trees".into()))?;
    let (v_vars, v_cons) = forest.path_to(v);
    let (w_vars, w_cons) = forest.path_to(w);
    let time = |i: &usize| forest.cnode(*i).time;
    let con = |i: &usize| forest.cnode(*i).constraint;

    match lca {
        Node::Var(r) => {
            if forest.parent_of(r).is_some() {
                return Err(Error::Internal("blossom meets at a non-root variable".into()));
            }
            // b = walk(C^t), walk(w)^-1
            let mut vars = v_vars.clone();
            vars.extend(w_vars.iter().rev());
            let mut nodes = v_cons.clone();
            nodes.push(node);
            nodes.extend(w_cons.iter().rev());
            let walk = Walk::from_parts_unchecked(vars, nodes.iter().map(con).collect());
            let times = nodes.iter().map(time).collect();
            let ell = v_cons.len() + 1;
            Ok((f.clone(), BlossomData::new(walk, ell, times, None)))
        }
        Node::Con(rs) => {
            // r is the child of R^s on the way to v.
            let pos = from_v.iter().position(|&n| n == Node::Con(rs)).expect("lca on v's side");
            let Node::Var(r) = from_v[pos - 1] else {
                return Err(Error::Internal("child of a constraint node is not a variable".into()));
            };
            let (r_vars, r_cons) = forest.path_to(r);
            let stem = Walk::from_parts_unchecked(r_vars.clone(), r_cons.iter().map(con).collect());
            let stemmed = crate::walks::walk::apply_unchecked(instance, f, &stem);
            if instance.first_violation(&stemmed).is_some() {
                return Err(Error::Internal("stem flip left the labeling invalid".into()));
            }
            // p runs from r down to C^t, q from R^s down to w.
            let depth_r = r_vars.len() - 1;
            let mut vars: Vec<VarId> = v_vars[depth_r..].to_vec();
            let mut nodes: Vec<usize> = v_cons[depth_r..].to_vec();
            nodes.push(node);
            let rs_depth = w_cons.iter().position(|&c| c == rs).expect("lca on w's side");
            vars.extend(w_vars[rs_depth + 1..].iter().rev());
            nodes.extend(w_cons[rs_depth..].iter().rev());
            vars.push(r);
            let ell = v_cons.len() - depth_r + 1;
            let walk = Walk::from_parts_unchecked(vars, nodes.iter().map(con).collect());
            let times = nodes.iter().map(time).collect();
            debug_assert_eq!(cn.constraint, walk.constraints()[ell - 1]);
            Ok((stemmed, BlossomData::new(walk, ell, times, Some(stem))))
        }
    }
}
