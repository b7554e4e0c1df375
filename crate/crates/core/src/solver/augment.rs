use crate::error::{Error, Result};
use crate::instance::{ConstraintId, EdgeLabeling, Instance, VarId};
use crate::walks::{is_augmenting, Walk};

/// The half-edge of `v` on which `a` and `b` differ, when exactly one does.
fn lone_difference(instance: &Instance, a: &EdgeLabeling, b: &EdgeLabeling, v: VarId) -> Option<ConstraintId> {
    let diff: Vec<ConstraintId> = instance
        .incidence(v)
        .iter()
        .filter(|&&(c, p)| a.tuple(c).get(p) != b.tuple(c).get(p))
        .map(|&(c, _)| c)
        .collect();
    (diff.len() == 1).then(|| diff[0])
}

/// A partner `w ≠ v` at `c` whose half-edge differs between `a` and `b` and
/// with `a(C) ⊕ v ⊕ w ∈ C`; the first one in scope order.
fn partner(instance: &Instance, a: &EdgeLabeling, b: &EdgeLabeling, v: VarId, c: ConstraintId) -> Option<VarId> {
    let con = instance.constraint(c);
    let pv = instance.position(v, c).expect("half-edge");
    let (ta, tb) = (a.tuple(c), b.tuple(c));
    con.scope.iter().enumerate().find_map(|(p, &w)| {
        (p != pv && ta.get(p) != tb.get(p) && con.relation.has(&ta.flipped2(pv, p))).then_some(w)
    })
}

fn check_pair(instance: &Instance, f: &EdgeLabeling, g: &EdgeLabeling) -> Result<()> {
    for h in [f, g] {
        instance.check_labeling(h)?;
        if let Some(c) = instance.first_violation(h) {
            return Err(Error::InvalidLabeling(instance.constraint(c).name.clone()));
        }
    }
    let (cf, cg) = (instance.inconsistency_count(f), instance.inconsistency_count(g));
    if cg >= cf {
        return Err(Error::NotAnImprovement { better: cg, worse: cf });
    }
    Ok(())
}

/// An augmenting f-walk, read off the difference between `f` and a better
/// labeling `g`, that does not start at `x`.
///
/// All constraints must be even Δ-matroids. `x` must be inconsistent in `f`
/// when given.
pub fn find_augmenting_walk(instance: &Instance, f: &EdgeLabeling, g: &EdgeLabeling, x: Option<VarId>) -> Result<Walk> {
    search(instance, f, g, x, false)
}

/// Like [`find_augmenting_walk`] for arbitrary Δ-matroid constraints. The
/// walk may end in a constraint.
pub fn find_general_augmenting_walk(instance: &Instance, f: &EdgeLabeling, g: &EdgeLabeling) -> Result<Walk> {
    search(instance, f, g, None, true)
}

fn search(instance: &Instance, f: &EdgeLabeling, g: &EdgeLabeling, x: Option<VarId>, general: bool) -> Result<Walk> {
    check_pair(instance, f, g)?;
    if let Some(x) = x {
        if x.0 >= instance.num_vars() || instance.is_consistent(f, x) {
            return Err(Error::InvalidWalk("the excluded start must be inconsistent".into()));
        }
    }
    let stuck = |what: &str| Error::Internal(format!("{what}: no exchange partner; is every constraint a Δ-matroid?"));

    // Make every variable consistent in f consistent in g as well.
    let mut g = g.clone();
    while let Some(v) = instance.vars().find(|&v| instance.is_consistent(f, v) && !instance.is_consistent(&g, v)) {
        let c = lone_difference(instance, f, &g, v).ok_or_else(|| Error::Internal("no unique difference".into()))?;
        let pv = instance.position(v, c).expect("half-edge");
        if general && instance.relation(c).has(&g.tuple(c).flipped(pv)) {
            g.tuple_mut(c).flip(pv);
            continue;
        }
        let w = partner(instance, &g, f, v, c).ok_or_else(|| stuck("homogenizing"))?;
        instance.flip(&mut g, v, c);
        instance.flip(&mut g, w, c);
    }

    let r = instance
        .vars()
        .find(|&r| Some(r) != x && !instance.is_consistent(f, r) && instance.is_consistent(&g, r))
        .ok_or_else(|| Error::Internal("no start for an augmenting walk".into()))?;
    let mut p = Walk::trivial(r);
    let mut cur = f.clone();
    loop {
        let v = p.last_var();
        let c = lone_difference(instance, &cur, &g, v).ok_or_else(|| Error::Internal("walk lost the difference".into()))?;
        let pv = instance.position(v, c).expect("half-edge");
        if general && instance.relation(c).has(&cur.tuple(c).flipped(pv)) {
            p.push_tail(c);
            break;
        }
        let w = partner(instance, &cur, &g, v, c).ok_or_else(|| stuck("extending"))?;
        instance.flip(&mut cur, v, c);
        instance.flip(&mut cur, w, c);
        p.push(c, w);
        if !instance.is_consistent(f, w) {
            break;
        }
    }
    if !is_augmenting(instance, f, &p) {
        return Err(Error::Internal(format!("walk {} is not augmenting", p.display(instance))));
    }
    Ok(p)
}
