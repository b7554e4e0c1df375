use super::*;
use crate::dmatroid::Tuple;
use crate::instance::{ConstraintId, EdgeLabeling, Instance, VarId};

fn k3() -> Instance {
    Instance::from_json(
        r#"{"variables":["ab","bc","ca"],"constraints":[
            {"id":"a","scope":["ab","ca"],"tuples":["10","01"]},
            {"id":"b","scope":["ab","bc"],"tuples":["10","01"]},
            {"id":"c","scope":["bc","ca"],"tuples":["10","01"]}]}"#,
    )
    .unwrap()
}

fn c4() -> Instance {
    Instance::from_json(
        r#"{"variables":["ab","bc","cd","da"],"constraints":[
            {"id":"a","scope":["ab","da"],"tuples":["10","01"]},
            {"id":"b","scope":["ab","bc"],"tuples":["10","01"]},
            {"id":"c","scope":["bc","cd"],"tuples":["10","01"]},
            {"id":"d","scope":["cd","da"],"tuples":["10","01"]}]}"#,
    )
    .unwrap()
}

fn labeling(tuples: &[&str]) -> EdgeLabeling {
    EdgeLabeling::from_tuples(tuples.iter().map(|s| Tuple::parse(s).unwrap()).collect())
}

fn v(i: &Instance, name: &str) -> VarId {
    i.var_by_name(name).unwrap()
}

fn c(i: &Instance, name: &str) -> ConstraintId {
    i.constraint_by_name(name).unwrap()
}

#[test]
fn walks_are_checked() {
    let k = k3();
    let ok = Walk::new(&k, vec![v(&k, "bc"), v(&k, "ab"), v(&k, "ca")], vec![c(&k, "b"), c(&k, "a")]);
    assert!(ok.is_ok());
    assert_eq!(ok.unwrap().display(&k), "bc -b- ab -a- ca");
    let off_scope = Walk::new(&k, vec![v(&k, "bc"), v(&k, "ca")], vec![c(&k, "b")]);
    assert!(matches!(off_scope, Err(crate::Error::InvalidWalk(_))));
    let twice = Walk::new(&k, vec![v(&k, "ab"), v(&k, "bc"), v(&k, "ab")], vec![c(&k, "b"), c(&k, "b")]);
    assert!(twice.is_err());
    // Around the triangle and back to the start is a closed walk.
    let closed = Walk::new(
        &k,
        vec![v(&k, "ab"), v(&k, "bc"), v(&k, "ca"), v(&k, "ab")],
        vec![c(&k, "b"), c(&k, "c"), c(&k, "a")],
    );
    assert!(closed.is_ok());
}

#[test]
fn apply_walk_basics() {
    let k = k3();
    let f = k.initial_labeling();
    let empty = Walk::trivial(v(&k, "ab"));
    assert_eq!(apply_walk(&k, &f, &empty).unwrap(), f);
    let step = Walk::new(&k, vec![v(&k, "ab"), v(&k, "ca")], vec![c(&k, "a")]).unwrap();
    let g = apply_walk(&k, &f, &step).unwrap();
    assert_eq!(f.distance(&g), 2);
    assert_eq!(apply_walk(&k, &g, &step).unwrap(), f);
}

#[test]
fn alternating_walk_in_triangle() {
    let k = k3();
    // a and b matched along ab, c takes bc.
    let f = labeling(&["10", "10", "10"]);
    assert!(k.is_valid(&f));
    assert_eq!(k.inconsistent_vars(&f), [v(&k, "bc")]);
    let q = Walk::new(&k, vec![v(&k, "bc"), v(&k, "ab"), v(&k, "ca")], vec![c(&k, "b"), c(&k, "a")]).unwrap();
    assert!(is_f_walk(&k, &f, &q));
    assert!(is_f_walk(&k, &f, &q.prefix(1)));
    assert!(is_f_walk(&k, &f, &Walk::trivial(v(&k, "ab"))));
    // ca is consistent, so this is not augmenting.
    assert!(!is_augmenting(&k, &f, &q));
}

#[test]
fn augmenting_walk_drops_two() {
    let i = c4();
    let f = labeling(&["10", "10", "10", "10"]);
    assert_eq!(i.inconsistency_count(&f), 2);
    let q = Walk::new(&i, vec![v(&i, "bc"), v(&i, "cd")], vec![c(&i, "c")]).unwrap();
    assert!(is_augmenting(&i, &f, &q));
    let g = apply_walk(&i, &f, &q).unwrap();
    assert!(i.is_valid(&g));
    assert_eq!(i.inconsistency_count(&g), 0);
    assert!(!is_augmenting(&i, &f, &q.reversed().prefix(0)));
}

#[test]
fn walk_ending_in_constraint() {
    let i = Instance::from_json(
        r#"{"variables":["x"],"constraints":[
            {"id":"A","scope":["x"],"tuples":["0","1"]},
            {"id":"B","scope":["x"],"tuples":["0"]}]}"#,
    )
    .unwrap();
    let f = labeling(&["1", "0"]);
    let mut q = Walk::trivial(v(&i, "x"));
    q.push_tail(c(&i, "A"));
    assert!(q.is_half_integral());
    assert_eq!(q.end(), None);
    assert!(is_augmenting(&i, &f, &q));
    let g = apply_walk(&i, &f, &q).unwrap();
    assert!(i.is_valid(&g));
    assert_eq!(i.inconsistency_count(&g), 0);
    let mut wrong = Walk::trivial(v(&i, "x"));
    wrong.push_tail(c(&i, "B"));
    assert!(!is_f_walk(&i, &f, &wrong));
}

#[test]
fn empty_dag_is_fine() {
    let k = k3();
    assert!(validate_fdag(&k, &k.initial_labeling(), &FDag::new()).is_empty());
}

#[test]
fn shortcut_is_reported() {
    let k = k3();
    let f = labeling(&["10", "10", "10"]);
    let mut t = FDag::new();
    t.add_edge(v(&k, "ab"), c(&k, "a"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&k, "ca"), c(&k, "a"), 2, EdgeDir::IntoConstraint);
    let bad = validate_fdag(&k, &f, &t);
    assert!(bad.iter().any(|d| d.item == 6), "{bad:?}");
}

#[test]
fn structural_violations() {
    let k = k3();
    let f = k.initial_labeling();
    let mut t = FDag::new();
    t.add_edge(v(&k, "ab"), c(&k, "c"), 1, EdgeDir::IntoConstraint);
    assert!(validate_fdag(&k, &f, &t).iter().any(|d| d.item == 1));

    let mut t = FDag::new();
    t.add_edge(v(&k, "ab"), c(&k, "a"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&k, "ab"), c(&k, "a"), 2, EdgeDir::OutOfConstraint);
    assert!(validate_fdag(&k, &f, &t).iter().any(|d| d.item == 2));

    let mut t = FDag::new();
    t.add_edge(v(&k, "ab"), c(&k, "a"), 1, EdgeDir::OutOfConstraint);
    t.add_edge(v(&k, "ab"), c(&k, "b"), 2, EdgeDir::OutOfConstraint);
    assert!(validate_fdag(&k, &f, &t).iter().any(|d| d.item == 3));

    let mut t = FDag::new();
    t.add_edge(v(&k, "ab"), c(&k, "a"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&k, "bc"), c(&k, "b"), 1, EdgeDir::IntoConstraint);
    assert!(validate_fdag(&k, &f, &t).iter().any(|d| d.item == 4));

    // ab enters b at time 2 but leaves a at time 1 into ab: fine. Reversing
    // time makes the path run against the timestamp order.
    let mut t = FDag::new();
    t.add_edge(v(&k, "ca"), c(&k, "a"), 2, EdgeDir::IntoConstraint);
    t.add_edge(v(&k, "ab"), c(&k, "a"), 2, EdgeDir::OutOfConstraint);
    t.add_edge(v(&k, "ab"), c(&k, "b"), 1, EdgeDir::IntoConstraint);
    assert!(validate_fdag(&k, &f, &t).iter().any(|d| d.item == 4));
}

#[test]
fn switch_two_is_checked() {
    let k = k3();
    let f = labeling(&["10", "10", "10"]);
    let mut t = FDag::new();
    // Flipping only ab at b is not a valid switch of two.
    t.add_edge(v(&k, "ab"), c(&k, "b"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&k, "ab"), c(&k, "a"), 1, EdgeDir::IntoConstraint);
    assert!(validate_fdag(&k, &f, &t).iter().any(|d| d.item == 4));
    let mut t = FDag::new();
    t.add_edge(v(&k, "ca"), c(&k, "c"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&k, "bc"), c(&k, "c"), 1, EdgeDir::OutOfConstraint);
    // f(c) = 10 over (bc, ca); flipping both gives 01, which is allowed.
    assert!(validate_fdag(&k, &f, &t).is_empty());
}

#[test]
fn two_sources_meeting_at_a_constraint() {
    let k = k3();
    let f = labeling(&["10", "10", "10"]);
    let mut t = FDag::new();
    t.add_edge(v(&k, "ab"), c(&k, "a"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&k, "ca"), c(&k, "a"), 1, EdgeDir::IntoConstraint);
    assert!(validate_fdag(&k, &f, &t).is_empty());
    let g = apply_dag(&k, &f, &t).unwrap();
    assert!(k.is_valid(&g));
}

#[test]
fn path_dag_matches_walk() {
    let i = c4();
    let f = labeling(&["10", "10", "10", "10"]);
    let q = Walk::new(&i, vec![v(&i, "bc"), v(&i, "cd")], vec![c(&i, "c")]).unwrap();
    let t = FDag::from_walk(&q, 1);
    assert!(validate_fdag(&i, &f, &t).is_empty());
    assert_eq!(apply_dag(&i, &f, &t).unwrap(), apply_walk(&i, &f, &q).unwrap());
    assert!(apply_dag(&i, &f, &FDag::new()).is_err());
    let mut single = FDag::new();
    single.add_var(v(&i, "ab"));
    assert_eq!(apply_dag(&i, &f, &single).unwrap(), f);
}

#[test]
fn dag_shape_is_enforced() {
    let i = c4();
    let f = labeling(&["10", "10", "10", "10"]);
    let mut t = FDag::new();
    t.add_edge(v(&i, "ab"), c(&i, "a"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&i, "da"), c(&i, "a"), 1, EdgeDir::IntoConstraint);
    t.add_edge(v(&i, "bc"), c(&i, "c"), 2, EdgeDir::IntoConstraint);
    assert!(matches!(apply_dag(&i, &f, &t), Err(crate::Error::DagShape(_))));
}
