use crate::instance::{ConstraintId, Instance, VarId};
use crate::walks::{EdgeDir, FDag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Absent,
    Root,
    Child(usize),
}

/// A node of the search forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Var(VarId),
    Con(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct ConstraintNode {
    pub constraint: ConstraintId,
    pub time: usize,
    pub parent: VarId,
    pub children: Vec<VarId>,
}

/// The forest grown by one improvement pass, rooted at the inconsistent
/// variables. Constraint nodes carry their timestamps.
#[derive(Clone, Debug)]
pub struct Forest {
    slots: Vec<Slot>,
    order: Vec<VarId>,
    cnodes: Vec<ConstraintNode>,
    used: Vec<[bool; 2]>,
    head: usize,
}

impl Forest {
    pub(crate) fn new(instance: &Instance, roots: &[VarId]) -> Forest {
        let mut forest = Forest {
            slots: vec![Slot::Absent; instance.num_vars()],
            order: Vec::new(),
            cnodes: Vec::new(),
            used: vec![[false; 2]; instance.num_vars()],
            head: 0,
        };
        for &r in roots {
            forest.slots[r.0] = Slot::Root;
            forest.order.push(r);
        }
        forest
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.slots[v.0] != Slot::Absent
    }

    pub fn num_constraint_nodes(&self) -> usize {
        self.cnodes.len()
    }

    pub(crate) fn cnode(&self, i: usize) -> &ConstraintNode {
        &self.cnodes[i]
    }

    /// Parent constraint node of `v`, if `v` is a non-root member.
    pub(crate) fn parent_of(&self, v: VarId) -> Option<usize> {
        match self.slots[v.0] {
            Slot::Child(c) => Some(c),
            _ => None,
        }
    }

    /// Whether the half-edge `{v, c}` carries an edge of the forest.
    pub(crate) fn is_used(&self, instance: &Instance, v: VarId, c: ConstraintId) -> bool {
        let inc = instance.incidence(v);
        let slot = if inc[0].0 == c { 0 } else { 1 };
        self.used[v.0][slot]
    }

    fn mark(&mut self, instance: &Instance, v: VarId, c: ConstraintId) {
        let inc = instance.incidence(v);
        let slot = if inc[0].0 == c { 0 } else { 1 };
        debug_assert!(!self.used[v.0][slot]);
        self.used[v.0][slot] = true;
    }

    /// The next unexplored half-edge `{v, C}` with `v` in the forest: first
    /// variable by insertion order, then constraint id.
    pub(crate) fn next_frontier(&mut self, instance: &Instance) -> Option<(VarId, ConstraintId)> {
        while let Some(&v) = self.order.get(self.head) {
            let inc = instance.incidence(v);
            for (slot, &(c, _)) in inc.iter().enumerate() {
                if !self.used[v.0][slot] {
                    return Some((v, c));
                }
            }
            self.head += 1;
        }
        None
    }

    /// Adds `C^t` with the edge `v C^t`; returns the node index.
    pub(crate) fn add_constraint(&mut self, instance: &Instance, v: VarId, c: ConstraintId, time: usize) -> usize {
        self.mark(instance, v, c);
        self.cnodes.push(ConstraintNode { constraint: c, time, parent: v, children: Vec::new() });
        self.cnodes.len() - 1
    }

    /// Adds `w` with the edge `C^t w`.
    pub(crate) fn add_child(&mut self, instance: &Instance, node: usize, w: VarId) {
        debug_assert!(!self.contains(w));
        self.mark(instance, w, self.cnodes[node].constraint);
        self.slots[w.0] = Slot::Child(node);
        self.cnodes[node].children.push(w);
        self.order.push(w);
    }

    /// Ancestors of a node, starting with the node itself and ending at its
    /// root.
    pub(crate) fn ancestors(&self, start: Node) -> Vec<Node> {
        let mut out = vec![start];
        let mut cur = start;
        loop {
            cur = match cur {
                Node::Var(v) => match self.slots[v.0] {
                    Slot::Child(c) => Node::Con(c),
                    _ => return out,
                },
                Node::Con(c) => Node::Var(self.cnodes[c].parent),
            };
            out.push(cur);
        }
    }

    pub(crate) fn root_of(&self, v: VarId) -> VarId {
        match *self.ancestors(Node::Var(v)).last().expect("nonempty") {
            Node::Var(r) => r,
            Node::Con(_) => unreachable!("roots are variables"),
        }
    }

    /// The tree path from the root down to `v`, as variables and the
    /// constraint nodes between them.
    pub(crate) fn path_to(&self, v: VarId) -> (Vec<VarId>, Vec<usize>) {
        let mut vars = Vec::new();
        let mut cons = Vec::new();
        for n in self.ancestors(Node::Var(v)) {
            match n {
                Node::Var(x) => vars.push(x),
                Node::Con(c) => cons.push(c),
            }
        }
        vars.reverse();
        cons.reverse();
        (vars, cons)
    }

    /// The forest as an f-DAG.
    pub fn to_fdag(&self) -> FDag {
        let mut dag = FDag { var_nodes: self.order.clone(), edges: Vec::new() };
        for node in &self.cnodes {
            dag.edges.push(crate::walks::DagEdge {
                var: node.parent,
                constraint: node.constraint,
                time: node.time,
                dir: EdgeDir::IntoConstraint,
            });
            for &w in &node.children {
                dag.edges.push(crate::walks::DagEdge {
                    var: w,
                    constraint: node.constraint,
                    time: node.time,
                    dir: EdgeDir::OutOfConstraint,
                });
            }
        }
        dag
    }

    /// The forest with the children of `node` removed and the edge `w C^t`
    /// added, as it stands when an augmenting path or blossom is found.
    pub(crate) fn terminal_dag(&self, node: usize, w: VarId) -> FDag {
        let mut dag = self.to_fdag();
        let n = &self.cnodes[node];
        dag.edges.retain(|e| {
            !(e.constraint == n.constraint && e.time == n.time && e.dir == EdgeDir::OutOfConstraint)
        });
        dag.edges.push(crate::walks::DagEdge {
            var: w,
            constraint: n.constraint,
            time: n.time,
            dir: EdgeDir::IntoConstraint,
        });
        dag
    }
}
