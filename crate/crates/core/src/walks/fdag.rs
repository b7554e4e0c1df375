use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{ConstraintId, EdgeLabeling, HalfEdge, Instance, VarId};
use crate::walks::Walk;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeDir {
    /// `v C^t`
    IntoConstraint,
    /// `C^t v`
    OutOfConstraint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DagEdge {
    pub var: VarId,
    pub constraint: ConstraintId,
    pub time: usize,
    pub dir: EdgeDir,
}

impl DagEdge {
    pub fn half_edge(&self) -> HalfEdge {
        HalfEdge { var: self.var, constraint: self.constraint }
    }

    fn node(&self) -> (ConstraintId, usize) {
        (self.constraint, self.time)
    }
}

/// A digraph on variables and timestamped copies `C^t` of constraints.
/// Constraint nodes are the ones that carry at least one edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FDag {
    pub var_nodes: Vec<VarId>,
    pub edges: Vec<DagEdge>,
}

impl FDag {
    pub fn new() -> FDag {
        FDag::default()
    }

    /// The path `q0 C1^1 q1 C2^2 …`, timestamps counting from `first_time`.
    pub fn from_walk(q: &Walk, first_time: usize) -> FDag {
        let mut dag = FDag { var_nodes: q.vars().to_vec(), edges: Vec::new() };
        dag.var_nodes.sort();
        dag.var_nodes.dedup();
        for (i, &c) in q.constraints().iter().enumerate() {
            let time = first_time + i;
            dag.edges.push(DagEdge { var: q.vars()[i], constraint: c, time, dir: EdgeDir::IntoConstraint });
            if let Some(&w) = q.vars().get(i + 1) {
                dag.edges.push(DagEdge { var: w, constraint: c, time, dir: EdgeDir::OutOfConstraint });
            }
        }
        dag
    }

    pub fn add_var(&mut self, v: VarId) {
        if !self.var_nodes.contains(&v) {
            self.var_nodes.push(v);
        }
    }

    pub fn add_edge(&mut self, var: VarId, constraint: ConstraintId, time: usize, dir: EdgeDir) {
        self.add_var(var);
        self.edges.push(DagEdge { var, constraint, time, dir });
    }

    pub fn constraint_nodes(&self) -> BTreeSet<(ConstraintId, usize)> {
        self.edges.iter().map(DagEdge::node).collect()
    }

    /// Whether the nodes and the edges and timestamp order admit a
    /// topological order.
    fn is_acyclic(&self) -> bool {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Node {
            Var(VarId),
            Con(ConstraintId, usize),
        }
        let mut succ: HashMap<Node, Vec<Node>> = HashMap::new();
        let mut indeg: HashMap<Node, usize> = HashMap::new();
        for &v in &self.var_nodes {
            indeg.entry(Node::Var(v)).or_default();
        }
        let mut link = |a: Node, b: Node, succ: &mut HashMap<Node, Vec<Node>>| {
            succ.entry(a).or_default().push(b);
            indeg.entry(a).or_default();
            *indeg.entry(b).or_default() += 1;
        };
        for e in &self.edges {
            let (v, c) = (Node::Var(e.var), Node::Con(e.constraint, e.time));
            match e.dir {
                EdgeDir::IntoConstraint => link(v, c, &mut succ),
                EdgeDir::OutOfConstraint => link(c, v, &mut succ),
            }
        }
        let mut by_time: Vec<(usize, ConstraintId)> = self.constraint_nodes().into_iter().map(|(c, t)| (t, c)).collect();
        by_time.sort();
        for pair in by_time.windows(2) {
            link(Node::Con(pair[0].1, pair[0].0), Node::Con(pair[1].1, pair[1].0), &mut succ);
        }
        let mut ready: Vec<Node> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&n, _)| n).collect();
        let mut removed = 0;
        while let Some(n) = ready.pop() {
            removed += 1;
            for &m in succ.get(&n).map(Vec::as_slice).unwrap_or(&[]) {
                let d = indeg.get_mut(&m).expect("node registered");
                *d -= 1;
                if *d == 0 {
                    ready.push(m);
                }
            }
        }
        removed == indeg.len()
    }
}

/// One failed condition of the f-DAG definition, numbered 1 to 6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DagViolation {
    pub item: u8,
    pub detail: String,
}

impl fmt::Display for DagViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "property {}: {}", self.item, self.detail)
    }
}

/// Checks the six f-DAG properties by direct enumeration. An empty result
/// means `t` is an f-DAG.
pub fn validate_fdag(instance: &Instance, f: &EdgeLabeling, t: &FDag) -> Vec<DagViolation> {
    let mut out = Vec::new();
    let mut bad = |item: u8, detail: String| out.push(DagViolation { item, detail });
    let name = |v: VarId| instance.var_name(v).to_string();
    let cname = |c: ConstraintId| instance.constraint(c).name.clone();

    let vars: HashSet<VarId> = t.var_nodes.iter().copied().collect();
    let mut usable = Vec::new();
    for e in &t.edges {
        if e.var.0 >= instance.num_vars() || e.constraint.0 >= instance.num_constraints() {
            bad(1, format!("edge {e:?} refers outside the instance"));
        } else if instance.position(e.var, e.constraint).is_none() {
            bad(1, format!("{} is not in the scope of {}", name(e.var), cname(e.constraint)));
        } else if !vars.contains(&e.var) {
            bad(1, format!("edge at {} whose variable is not a node", name(e.var)));
        } else {
            usable.push(*e);
        }
    }

    let mut per_half_edge: HashMap<HalfEdge, usize> = HashMap::new();
    for e in &usable {
        *per_half_edge.entry(e.half_edge()).or_default() += 1;
    }
    for (h, n) in &per_half_edge {
        if *n > 1 {
            bad(2, format!("{}@{} appears {n} times", name(h.var), cname(h.constraint)));
        }
    }

    let mut incoming: HashMap<VarId, usize> = HashMap::new();
    for e in usable.iter().filter(|e| e.dir == EdgeDir::OutOfConstraint) {
        *incoming.entry(e.var).or_default() += 1;
    }
    for (v, n) in &incoming {
        if *n > 1 {
            bad(3, format!("{} has {n} incoming edges", name(*v)));
        }
    }

    let mut owner: BTreeMap<usize, ConstraintId> = BTreeMap::new();
    for (c, time) in t.constraint_nodes() {
        if let Some(&other) = owner.get(&time) {
            if other != c {
                bad(4, format!("{} and {} share timestamp {time}", cname(other), cname(c)));
            }
        } else {
            owner.insert(time, c);
        }
    }
    if !t.is_acyclic() {
        bad(4, "edges and timestamps admit no common order".into());
    }

    if instance.check_labeling(f).is_err() {
        bad(5, "labeling does not fit the instance".into());
        return out;
    }
    let mut at: BTreeMap<(ConstraintId, usize), Vec<DagEdge>> = BTreeMap::new();
    for e in &usable {
        at.entry(e.node()).or_default().push(*e);
    }
    for (&(c, time), es) in &at {
        for u in es.iter().filter(|e| e.dir == EdgeDir::IntoConstraint) {
            for v in es.iter().filter(|e| e.var != u.var) {
                if !instance.relation(c).has(&instance.flipped_tuple(f, c, &[u.var, v.var])) {
                    bad(
                        5,
                        format!("f({})^{time} flipped at {} and {} leaves the relation", cname(c), name(u.var), name(v.var)),
                    );
                }
            }
        }
    }
    for u in usable.iter().filter(|e| e.dir == EdgeDir::IntoConstraint) {
        for v in &usable {
            if v.constraint == u.constraint && u.time < v.time && v.var != u.var {
                let c = u.constraint;
                if instance.relation(c).has(&instance.flipped_tuple(f, c, &[u.var, v.var])) {
                    bad(
                        6,
                        format!(
                            "shortcut at {} from {}^{} to {}^{}",
                            cname(c),
                            name(u.var),
                            u.time,
                            name(v.var),
                            v.time
                        ),
                    );
                }
            }
        }
    }
    out
}

/// `f ⊕ T` for a DAG made of two directed paths from distinct variables that
/// meet only at their final constraint node, or of one directed path between
/// two variables. A single variable with no edges is the empty path.
pub fn apply_dag(instance: &Instance, f: &EdgeLabeling, t: &FDag) -> Result<EdgeLabeling> {
    check_shape(t)?;
    let mut g = f.clone();
    for e in &t.edges {
        if instance.position(e.var, e.constraint).is_none() {
            return Err(Error::DagShape(format!("{} is not in the scope of {}", e.var.0, e.constraint.0)));
        }
        instance.flip(&mut g, e.var, e.constraint);
    }
    Ok(g)
}

fn check_shape(t: &FDag) -> Result<()> {
    let shape = |msg: &str| Err(Error::DagShape(msg.to_string()));
    if t.edges.is_empty() {
        return if t.var_nodes.len() == 1 { Ok(()) } else { shape("an edgeless DAG must be a single variable") };
    }
    if !t.is_acyclic() {
        return shape("the DAG has a cycle");
    }
    let mut half_edges = HashSet::new();
    if !t.edges.iter().all(|e| half_edges.insert(e.half_edge())) {
        return shape("a half-edge is used twice");
    }
    let mut var_deg: HashMap<VarId, (usize, usize)> = t.var_nodes.iter().map(|&v| (v, (0, 0))).collect();
    let mut con_deg: HashMap<(ConstraintId, usize), (usize, usize)> = HashMap::new();
    for e in &t.edges {
        let Some(vd) = var_deg.get_mut(&e.var) else {
            return shape("edge at a variable that is not a node");
        };
        let cd = con_deg.entry(e.node()).or_default();
        match e.dir {
            EdgeDir::IntoConstraint => {
                vd.1 += 1;
                cd.0 += 1;
            }
            EdgeDir::OutOfConstraint => {
                vd.0 += 1;
                cd.1 += 1;
            }
        }
    }
    let sources = var_deg.values().filter(|&&d| d == (0, 1)).count();
    let var_sinks = var_deg.values().filter(|&&d| d == (1, 0)).count();
    let inner_vars = var_deg.values().filter(|&&d| d == (1, 1)).count();
    let con_sinks = con_deg.values().filter(|&&d| d == (2, 0)).count();
    let inner_cons = con_deg.values().filter(|&&d| d == (1, 1)).count();
    let vars_ok = sources + var_sinks + inner_vars == var_deg.len();
    let cons_ok = con_sinks + inner_cons == con_deg.len();
    if !vars_ok || !cons_ok {
        return shape("a node has the wrong degree for a path");
    }
    match (sources, var_sinks, con_sinks) {
        (2, 0, 1) | (1, 1, 0) => Ok(()),
        _ => shape("expected two paths meeting at a constraint, or a single path"),
    }
}
