use crate::error::{Error, Result};
use crate::instance::{EdgeLabeling, Instance, VarId};
use crate::solver::augment::find_augmenting_walk;
use crate::solver::ContractionRecord;
use crate::walks::walk::apply_unchecked;
use crate::walks::{is_f_walk, Walk};

fn one_step(instance: &Instance, f: &EdgeLabeling, x: VarId, c: crate::instance::ConstraintId, y: VarId) -> bool {
    let w = Walk::from_parts_unchecked(vec![x, y], vec![c]);
    is_f_walk(instance, f, &w)
}

fn finish(instance: &Instance, from: &EdgeLabeling, q: &Walk, target: usize) -> Result<EdgeLabeling> {
    q.check(instance).map_err(|e| Error::Internal(format!("lifted walk is malformed: {e}")))?;
    let g = apply_unchecked(instance, from, q);
    if instance.first_violation(&g).is_some() {
        return Err(Error::Internal(format!("lifted walk {} leaves the labeling invalid", q.display(instance))));
    }
    let got = instance.inconsistency_count(&g);
    if got != target {
        return Err(Error::Internal(format!("lifted labeling has {got} inconsistencies, expected {target}")));
    }
    Ok(g)
}

/// Turns an improvement of the contracted instance into an improvement of
/// the instance the blossom was found in.
///
/// The result has two inconsistencies fewer than `record.f`.
pub fn lift_improvement(record: &ContractionRecord, g_contracted: &EdgeLabeling) -> Result<EdgeLabeling> {
    let (ib, fb) = (&record.contracted, &record.f_contracted);
    let (i, f) = (&record.original, &record.f);
    let b = &record.blossom;
    let target = i.inconsistency_count(f).checked_sub(2).ok_or_else(|| Error::Internal("nothing to improve".into()))?;
    let pb = find_augmenting_walk(ib, fb, g_contracted, Some(record.base_var()))?;

    let rename = |vars: &[VarId]| -> Vec<VarId> { vars.iter().map(|v| record.var_map[v.0].expect("original variable")).collect() };
    let first_blossom = pb.vars().iter().position(|&v| record.is_blossom_var(v));
    let Some(m) = first_blossom else {
        // The walk never touches the blossom, and the hub only sees blossom
        // variables, so it is a walk of the original instance.
        let p = Walk::from_parts_unchecked(rename(pb.vars()), pb.constraints().to_vec());
        return finish(i, f, &p, target);
    };
    if m == 0 {
        return Err(Error::Internal("augmenting walk starts at a blossom variable".into()));
    }
    let r = Walk::from_parts_unchecked(rename(&pb.vars()[..m]), pb.constraints()[..m - 1].to_vec());

    let k = b.k();
    let enters = |q: &Walk| -> bool {
        let x = q.last_var();
        (1..=k).any(|j| {
            let c = b.constraint(j);
            [b.var(j), b.var(j - 1)].into_iter().any(|y| {
                if i.position(x, c).is_none() {
                    return false;
                }
                let mut ext = q.clone();
                ext.push(c, y);
                ext.check(i).is_ok() && is_f_walk(i, f, &ext)
            })
        })
    };
    let q = (0..=r.len())
        .map(|n| r.prefix(n))
        .find(|q| enters(q))
        .ok_or_else(|| Error::Internal("the walk never enters the blossom".into()))?;
    let f1 = apply_unchecked(i, f, &q);
    let x = q.last_var();

    let forward = |j: usize| i.position(x, b.constraint(j)).is_some() && one_step(i, &f1, x, b.constraint(j), b.var(j));
    let backward = |j: usize| i.position(x, b.constraint(j)).is_some() && one_step(i, &f1, x, b.constraint(j), b.var(j - 1));
    let ell = b.ell;

    let tail = |j: usize| -> Walk {
        // x C_j b_j … C_k b_k
        let mut w = Walk::trivial(x);
        w.push(b.constraint(j), b.var(j));
        w.concat(&b.walk.subwalk(j, k))
    };
    let head = |j: usize| -> Walk {
        // x C_j b_{j-1} … C_1 b_0
        let mut w = Walk::trivial(x);
        w.push(b.constraint(j), b.var(j - 1));
        w.concat(&b.walk.subwalk(0, j - 1).reversed())
    };

    let walk = if let Some(j) = (ell..=k).rev().find(|&j| forward(j)) {
        tail(j).reversed()
    } else if let Some(j) = (1..=ell).find(|&j| backward(j)) {
        head(j).reversed()
    } else {
        let j = (1..=k)
            .filter(|&j| forward(j) || backward(j))
            .max_by_key(|&j| b.time(j))
            .ok_or_else(|| Error::Internal("no blossom entry from the moved inconsistency".into()))?;
        if forward(j) {
            if j >= ell {
                return Err(Error::Internal("forward entry past the blossom apex".into()));
            }
            tail(j)
        } else {
            if j <= ell {
                return Err(Error::Internal("backward entry before the blossom apex".into()));
            }
            head(j)
        }
    };
    finish(i, &f1, &walk, target)
}
