use super::*;

fn k3() -> Instance {
    Instance::from_json(
        r#"{"variables":["ab","bc","ca"],"constraints":[
            {"id":"a","scope":["ab","ca"],"tuples":["10","01"]},
            {"id":"b","scope":["ab","bc"],"tuples":["10","01"]},
            {"id":"c","scope":["bc","ca"],"tuples":["10","01"]}]}"#,
    )
    .unwrap()
}

fn k4() -> Instance {
    let nodes = ["a", "b", "c", "d"];
    let mut vars = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            vars.push(format!("{}{}", nodes[i], nodes[j]));
        }
    }
    let one_hot = Relation::from_strs(&["100", "010", "001"]).unwrap();
    let constraints = nodes
        .iter()
        .map(|n| Constraint {
            name: n.to_string(),
            scope: vars
                .iter()
                .enumerate()
                .filter(|(_, v)| v.contains(n))
                .map(|(i, _)| VarId(i))
                .collect(),
            relation: one_hot.clone(),
        })
        .collect();
    Instance::new(vars, constraints).unwrap()
}

fn single_edge() -> Instance {
    Instance::from_json(
        r#"{"variables":["e"],"constraints":[
            {"id":"u","scope":["e"],"tuples":["1"]},
            {"id":"w","scope":["e"],"tuples":["1"]}]}"#,
    )
    .unwrap()
}

fn spec(text: &str) -> InstanceSpec {
    InstanceSpec::from_json(text).unwrap()
}

#[test]
fn degree_diagnostics() {
    let low = spec(r#"{"variables":["x"],"constraints":[{"id":"C","scope":["x"],"tuples":["0"]}]}"#);
    let d = validate_instance(&low);
    assert_eq!(d.len(), 1);
    assert!(d[0].to_string().contains("degree 1"));

    let high = spec(
        r#"{"variables":["x"],"constraints":[
            {"id":"A","scope":["x"],"tuples":["0"]},
            {"id":"B","scope":["x"],"tuples":["0"]},
            {"id":"C","scope":["x"],"tuples":["0"]}]}"#,
    );
    assert!(validate_instance(&high)[0].to_string().contains("degree 3"));
    assert!(matches!(high.build(), Err(Error::DegreeTooLarge { degree: 3, .. })));
}

#[test]
fn repeated_scope_and_unknown_vars() {
    let rep = spec(
        r#"{"variables":["x"],"constraints":[
            {"id":"A","scope":["x","x"],"tuples":["00"]}]}"#,
    );
    assert!(validate_instance(&rep)
        .iter()
        .any(|d| matches!(d, Diagnostic::RepeatedInScope { .. })));
    let unk = spec(r#"{"variables":[],"constraints":[{"id":"A","scope":["q"],"tuples":["0"]}]}"#);
    assert!(matches!(unk.build(), Err(Error::UnknownVariable(_))));
}

#[test]
fn rejects_other_schema_versions() {
    assert!(InstanceSpec::from_json(r#"{"schema_version":7,"variables":[],"constraints":[]}"#).is_err());
}

#[test]
fn initial_labeling_and_counts() {
    let e = single_edge();
    let f = e.initial_labeling();
    assert!(e.is_valid(&f));
    assert_eq!(e.inconsistency_count(&f), 0);

    let k = k3();
    let f = k.initial_labeling();
    assert!(k.is_valid(&f));
    // Canonical order puts "01" first, so every node picks its second edge:
    // a and c agree on ca, only bc is split.
    assert_eq!(f.tuples().iter().map(|t| t.to_bit_string()).collect::<Vec<_>>(), ["01", "01", "01"]);
    assert_eq!(k.inconsistent_vars(&f), [k.var_by_name("bc").unwrap()]);
}

#[test]
fn matching_one_edge_leaves_one_inconsistency() {
    let k = k3();
    let ab = k.var_by_name("ab").unwrap();
    let mut f = k.initial_labeling();
    // a and b both take ab, c keeps ca.
    f.set_tuple(ConstraintId(0), Tuple::parse("10").unwrap());
    f.set_tuple(ConstraintId(1), Tuple::parse("10").unwrap());
    f.set_tuple(ConstraintId(2), Tuple::parse("01").unwrap());
    assert!(k.is_valid(&f));
    assert!(k.is_consistent(&f, ab));
    assert_eq!(k.inconsistency_count(&f), 1);
}

#[test]
fn brute_force_examples() {
    assert_eq!(brute_force_optimum(&single_edge()).unwrap().count, 0);
    let r = brute_force_optimum(&k3()).unwrap();
    assert_eq!(r.count, 1);
    assert!(k3().is_valid(&r.witness));
    assert_eq!(k3().inconsistency_count(&r.witness), 1);
    assert_eq!(brute_force_optimum(&k4()).unwrap().count, 0);
}

#[test]
fn brute_force_bound_is_enforced() {
    let err = brute_force_optimum_bounded(&k3(), 7).unwrap_err();
    assert_eq!(err, Error::BoundExceeded { needed: 8, bound: 7 });
}

#[test]
fn enumeration_and_parity() {
    let k = k4();
    let mut all = Vec::new();
    for_each_valid_labeling(&k, DEFAULT_ENUMERATION_BOUND, |f| all.push(f.clone())).unwrap();
    assert_eq!(all.len(), 81);
    let min = all.iter().map(|f| k.inconsistency_count(f)).min().unwrap();
    assert_eq!(min, 0);
    for f in &all {
        assert!(parity_invariant_check(&k, &all[0], f).unwrap());
    }
}

#[test]
fn parity_check_rejects_invalid() {
    let k = k3();
    let mut bad = k.initial_labeling();
    bad.set_tuple(ConstraintId(0), Tuple::parse("11").unwrap());
    assert!(matches!(
        parity_invariant_check(&k, &k.initial_labeling(), &bad),
        Err(Error::InvalidLabeling(_))
    ));
}

#[test]
fn normalize_single_unary_constraint() {
    let s = spec(r#"{"variables":["v"],"constraints":[{"id":"C","scope":["v"],"tuples":["1"]}]}"#);
    let i = normalize_degree(&s).unwrap();
    assert_eq!(i.var_names(), ["v"]);
    assert_eq!(i.num_constraints(), 2);
    assert!(validate_instance(&i.to_spec()).is_empty());
    assert_eq!(brute_force_optimum(&i).unwrap().count, 0);
}

#[test]
fn normalize_fuses_only_degree_one() {
    let s = spec(
        r#"{"variables":["v","w","z"],"constraints":[
            {"id":"C","scope":["v","w"],"tuples":["01","10"]},
            {"id":"D","scope":["w"],"tuples":["1"]}]}"#,
    );
    let i = normalize_degree(&s).unwrap();
    assert_eq!(i.num_vars(), 3);
    assert_eq!(i.var_names(), ["v", "w#0", "w#1"]);
    // Relaxed optimum is 0 (v=0, w=1) and doubling keeps it.
    assert_eq!(brute_force_optimum(&i).unwrap().count, 0);
}

#[test]
fn normalize_doubles_the_optimum() {
    let i = normalize_degree(&k3().to_spec()).unwrap();
    assert_eq!(i.num_vars(), 6);
    assert_eq!(i.num_constraints(), 6);
    assert_eq!(brute_force_optimum(&i).unwrap().count, 2);

    let s = spec(r#"{"variables":["x"],"constraints":[
        {"id":"A","scope":["x"],"tuples":["0"]},
        {"id":"B","scope":["x"],"tuples":["0"]},
        {"id":"C","scope":["x"],"tuples":["0"]}]}"#);
    assert!(matches!(normalize_degree(&s), Err(Error::DegreeTooLarge { .. })));
}

#[test]
fn labeling_json_round_trip() {
    let k = k3();
    let f = k.initial_labeling();
    let text = k.labeling_to_json(&f);
    assert_eq!(k.labeling_from_json(&text).unwrap(), f);
    assert!(k.labeling_from_json(r#"{"ab@a":1}"#).is_err());
}

#[test]
fn spec_round_trip() {
    let k = k3();
    assert_eq!(k.to_spec().build().unwrap(), k);
}
