use super::*;

fn rel(ts: &[&str]) -> Relation {
    Relation::from_strs(ts).unwrap()
}

fn interference() -> Relation {
    interference_matroid()
}

#[test]
fn membership() {
    let m = interference();
    assert!(m.contains(&"111".parse().unwrap()).unwrap());
    assert!(!m.contains(&"100".parse().unwrap()).unwrap());
    assert!(rel(&["00", "11"]).contains(&"00".parse().unwrap()).unwrap());
    assert!(matches!(
        m.contains(&"10".parse().unwrap()),
        Err(crate::Error::ArityMismatch { expected: 3, found: 2 })
    ));
}

#[test]
fn delta_matroid_checks() {
    assert!(interference().is_delta_matroid().unwrap());
    assert!(!rel(&["000", "111"]).is_delta_matroid().unwrap());
    assert!(rel(&["00", "11"]).is_delta_matroid().unwrap());
    let empty = Relation::new(2, []).unwrap();
    assert!(matches!(empty.is_delta_matroid(), Err(crate::Error::EmptyRelation)));
}

#[test]
fn evenness() {
    let x = rel(&["10000", "01000", "00100", "00010", "11001", "10101", "10011"]);
    assert!(x.is_even() && x.is_delta_matroid().unwrap());
    let y = rel(&["001", "010", "100", "111"]);
    assert!(y.is_even() && y.is_delta_matroid().unwrap());
    assert!(!interference().is_even());
}

#[test]
fn products() {
    let bit = rel(&["0", "1"]);
    assert_eq!(bit.direct_product(&bit), Relation::full(2));
    let mm = interference().direct_product(&interference());
    assert_eq!((mm.arity(), mm.len()), (6, 25));
    assert_eq!(rel(&["00", "11"]).direct_product(&rel(&["1"])).to_strings(), ["001", "111"]);
}

#[test]
fn identification() {
    let r = rel(&["00", "11"]).identify(0, 1).unwrap();
    assert_eq!((r.arity(), r.len()), (0, 1));
    let r = rel(&["01", "10"]).identify(0, 1).unwrap();
    assert_eq!((r.arity(), r.len()), (0, 0));
    // 000 and 011 agree on the last two positions, 111 too; 110 and 101 do not.
    assert_eq!(interference().identify(1, 2).unwrap().to_strings(), ["0", "1"]);
    assert!(interference().identify(1, 1).is_err());
    assert!(interference().identify(1, 3).is_err());
}

#[test]
fn fixing() {
    assert_eq!(interference().fix(0, false).unwrap().to_strings(), ["00", "11"]);
    assert_eq!(interference().fix(0, true).unwrap().to_strings(), ["01", "10", "11"]);
    let m = rel(&["100", "111"]);
    assert_eq!(m.fix(0, true).unwrap().to_strings(), ["00", "11"]);
}

#[test]
fn flipping() {
    let m = interference();
    assert_eq!(m.flip_values(&FlipSet::default()), m);
    let all = FlipSet::new([0, 1, 2], 3).unwrap();
    assert_eq!(rel(&["000"]).flip_values(&all).to_strings(), ["111"]);
    let first = FlipSet::new([0], 3).unwrap();
    assert_eq!(m.flip_values(&first).to_strings(), ["001", "010", "011", "100", "111"]);
    assert!(FlipSet::new([3], 3).is_err());
}

#[test]
fn interference_minors() {
    assert!(interference().contains_interference_minor());
    let x = rel(&["10000", "01000", "00100", "00010", "11001", "10101", "10011"]);
    assert!(!x.contains_interference_minor());
    // Hidden behind a fixed fourth coordinate and a flip.
    let hidden = interference()
        .flip_values(&FlipSet::new([1], 3).unwrap())
        .direct_product(&rel(&["1"]));
    assert!(hidden.contains_interference_minor());
    assert!(!rel(&["00", "11"]).contains_interference_minor());
}

#[test]
fn d_transform_and_complements() {
    assert_eq!(rel(&["00", "11"]).d_transform().unwrap().to_strings(), ["00"]);
    assert_eq!(Relation::full(2).d_transform().unwrap().to_strings(), ["00", "11"]);
    assert_eq!(rel(&["000", "111"]).d_transform().unwrap().to_strings(), ["000"]);
    assert!(rel(&["0"]).d_transform().is_err());

    assert!(rel(&["00", "11"]).is_self_complementary());
    assert!(rel(&["000", "111", "010", "101"]).is_self_complementary());
    assert!(!rel(&["000"]).is_self_complementary());
}

#[test]
fn planar_report() {
    let r = planar_tractability_report(&[rel(&["00", "11"])]).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert_eq!(r.relations[0].d_even_delta_matroid, Some(true));
    let r = planar_tractability_report(&[rel(&["000"])]).unwrap();
    assert_eq!(r.verdict, Verdict::Fails);
    assert!(!r.relations[0].self_complementary);
    let r = planar_tractability_report(&[even_relation(2)]).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert_eq!(r.even_relations[0], ["0"]);
    assert_eq!(r.even_relations[2], ["000", "011", "101", "110"]);
    let r = planar_tractability_report(&[rel(&["0", "1"])]).unwrap();
    assert_eq!(r.verdict, Verdict::Undetermined);
    assert!(planar_tractability_report(&[]).is_err());
}
