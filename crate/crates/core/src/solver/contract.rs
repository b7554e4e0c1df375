use std::collections::{BTreeSet, HashSet};

use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::instance::{Constraint, ConstraintId, EdgeLabeling, Instance, VarId};
use crate::solver::BlossomData;

/// One contraction step: the instance before and after, and how their
/// variables correspond.
#[derive(Clone, Debug)]
pub struct ContractionRecord {
    pub original: Instance,
    /// Labeling of `original` the blossom was found in, after any stem flip.
    pub f: EdgeLabeling,
    pub blossom: BlossomData,
    pub contracted: Instance,
    pub f_contracted: EdgeLabeling,
    /// For each variable of `contracted`, the variable of `original` it
    /// stands for, or `None` for the new blossom variables.
    pub var_map: Vec<Option<VarId>>,
    /// `v_C` in `contracted` for each blossom constraint, in the order of
    /// `blossom.constraints`.
    pub blossom_vars: Vec<VarId>,
    /// The added one-hot constraint.
    pub hub: ConstraintId,
}

impl ContractionRecord {
    /// The blossom variable `v_{C1}`, inconsistent in `f_contracted`.
    pub fn base_var(&self) -> VarId {
        self.blossom_vars[0]
    }

    pub fn is_blossom_var(&self, v: VarId) -> bool {
        self.var_map[v.0].is_none()
    }
}

fn fresh_name(taken: &HashSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Contracts the blossom `b` of the f-blossom pair `(f, b)`.
pub fn contract(instance: &Instance, f: &EdgeLabeling, b: &BlossomData) -> Result<ContractionRecord> {
    b.check(instance, f)?;
    let in_blossom: BTreeSet<VarId> = b.walk.vars().iter().copied().collect();

    let mut var_map: Vec<Option<VarId>> = Vec::new();
    let mut new_id = vec![None; instance.num_vars()];
    let mut names: Vec<String> = Vec::new();
    for v in instance.vars() {
        if !in_blossom.contains(&v) {
            new_id[v.0] = Some(VarId(names.len()));
            names.push(instance.var_name(v).to_string());
            var_map.push(Some(v));
        }
    }
    let mut taken: HashSet<String> = instance.var_names().iter().cloned().collect();
    let mut blossom_vars = Vec::new();
    for &c in &b.constraints {
        let name = fresh_name(&taken, format!("v_{}", instance.constraint(c).name));
        taken.insert(name.clone());
        blossom_vars.push(VarId(names.len()));
        names.push(name);
        var_map.push(None);
    }

    let mut constraints = Vec::with_capacity(instance.num_constraints() + 1);
    let mut tuples = Vec::with_capacity(instance.num_constraints() + 1);
    for cid in instance.constraint_ids() {
        let con = instance.constraint(cid);
        let ft = f.tuple(cid);
        match b.constraints.iter().position(|&c| c == cid) {
            None => {
                let scope = con.scope.iter().map(|v| new_id[v.0].expect("kept variable")).collect();
                constraints.push(Constraint { name: con.name.clone(), scope, relation: con.relation.clone() });
                tuples.push(ft.clone());
            }
            Some(li) => {
                let keep: Vec<usize> = (0..con.scope.len()).filter(|&p| !in_blossom.contains(&con.scope[p])).collect();
                let inner: Vec<usize> = (0..con.scope.len()).filter(|&p| in_blossom.contains(&con.scope[p])).collect();
                let mut rows = Vec::new();
                for alpha in con.relation.iter() {
                    let moved = inner.iter().filter(|&&p| alpha.get(p) != ft.get(p)).count();
                    if moved <= 1 {
                        let mut beta = alpha.select(&keep);
                        beta = beta.concat(&Tuple::from_bits([moved == 1]));
                        rows.push(beta);
                    }
                }
                let relation = Relation::new(keep.len() + 1, rows)?;
                let mut scope: Vec<VarId> = keep.iter().map(|&p| new_id[con.scope[p].0].expect("kept variable")).collect();
                scope.push(blossom_vars[li]);
                constraints.push(Constraint { name: con.name.clone(), scope, relation });
                tuples.push(ft.select(&keep).concat(&Tuple::from_bits([false])));
            }
        }
    }

    let con_names: HashSet<String> = instance.constraints().iter().map(|c| c.name.clone()).collect();
    let hub_name = fresh_name(&con_names, format!("N#{}", instance.num_constraints()));
    let l = b.constraints.len();
    let one_hot: Vec<Tuple> = (0..l)
        .map(|i| {
            let mut t = Tuple::zeros(l);
            t.set(i, true);
            t
        })
        .collect();
    let hub = ConstraintId(constraints.len());
    constraints.push(Constraint { name: hub_name, scope: blossom_vars.clone(), relation: Relation::new(l, one_hot)? });
    let mut hub_tuple = Tuple::zeros(l);
    hub_tuple.set(0, true);
    tuples.push(hub_tuple);

    let contracted = Instance::new(names, constraints)
        .map_err(|e| Error::Internal(format!("contracted instance is malformed: {e}")))?;
    let f_contracted = EdgeLabeling::from_tuples(tuples);
    if let Some(c) = contracted.first_violation(&f_contracted) {
        return Err(Error::Internal(format!(
            "contracted labeling is invalid at {}",
            contracted.constraint(c).name
        )));
    }
    if contracted.inconsistency_count(&f_contracted) != instance.inconsistency_count(f) {
        return Err(Error::Internal("contraction changed the inconsistency count".into()));
    }
    Ok(ContractionRecord {
        original: instance.clone(),
        f: f.clone(),
        blossom: b.clone(),
        contracted,
        f_contracted,
        var_map,
        blossom_vars,
        hub,
    })
}
