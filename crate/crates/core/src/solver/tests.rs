use super::*;
use crate::dmatroid::Relation;
use crate::generate::{random_even_instance, random_valid_labeling, seeded};
use crate::instance::{brute_force_optimum, Constraint, VarId};
use crate::walks::{validate_fdag, FDag};

fn k3() -> Instance {
    Instance::from_json(
        r#"{"variables":["ab","bc","ca"],"constraints":[
            {"id":"a","scope":["ab","ca"],"tuples":["10","01"]},
            {"id":"b","scope":["ab","bc"],"tuples":["10","01"]},
            {"id":"c","scope":["bc","ca"],"tuples":["10","01"]}]}"#,
    )
    .unwrap()
}

/// Perfect matching constraints on a simple graph.
fn graph(n: usize, edges: &[(usize, usize)]) -> Instance {
    let names = edges.iter().map(|(a, b)| format!("e{a}_{b}")).collect();
    let constraints = (0..n)
        .map(|u| {
            let scope: Vec<VarId> =
                edges.iter().enumerate().filter(|(_, &(a, b))| a == u || b == u).map(|(i, _)| VarId(i)).collect();
            let rows = (0..scope.len()).map(|i| {
                let mut t = crate::Tuple::zeros(scope.len());
                t.set(i, true);
                t
            });
            Constraint { name: format!("n{u}"), relation: Relation::new(scope.len(), rows).unwrap(), scope }
        })
        .collect();
    Instance::new(names, constraints).unwrap()
}

fn petersen() -> Instance {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    graph(10, &edges)
}

/// Checks everything the solver promises along the way.
#[derive(Default)]
struct Checker {
    violations: Vec<String>,
    stats: Stats,
}

impl Checker {
    fn dag(&mut self, what: &str, instance: &Instance, f: &EdgeLabeling, t: &FDag) {
        for v in validate_fdag(instance, f, t) {
            self.violations.push(format!("{what}: {v:?}"));
        }
    }
}

impl SolverObserver for Checker {
    fn forest_changed(&mut self, instance: &Instance, f: &EdgeLabeling, forest: &Forest) {
        self.dag("forest", instance, f, &forest.to_fdag());
    }
    fn terminal_dag(&mut self, instance: &Instance, f: &EdgeLabeling, dag: &FDag) {
        self.dag("terminal", instance, f, dag);
    }
    fn expanded(&mut self, instance: &Instance, v: VarId, c: crate::ConstraintId, time: usize, depth: usize) {
        self.stats.expanded(instance, v, c, time, depth);
    }
    fn blossom(&mut self, instance: &Instance, f: &EdgeLabeling, b: &BlossomData, depth: usize) {
        self.stats.blossom(instance, f, b, depth);
        if let Err(e) = b.check(instance, f) {
            self.violations.push(format!("blossom: {e}"));
        }
    }
    fn contracted(&mut self, r: &ContractionRecord, depth: usize) {
        self.stats.contracted(r, depth);
        for c in r.contracted.constraints() {
            if !c.relation.is_even_delta_matroid() {
                self.violations.push(format!("{} is not an even Δ-matroid", c.name));
            }
        }
        if r.contracted.num_vars() > r.original.num_vars() {
            self.violations.push("contraction grew the variables".into());
        }
        if r.contracted.num_constraints() != r.original.num_constraints() + 1 {
            self.violations.push("contraction must add exactly one constraint".into());
        }
        if r.contracted.inconsistency_count(&r.f_contracted) != r.original.inconsistency_count(&r.f) {
            self.violations.push("contraction changed the count".into());
        }
    }
}

#[test]
fn no_inconsistencies_is_optimal() {
    let i = graph(2, &[(0, 1)]);
    assert_eq!(improve(&i, &i.initial_labeling()).unwrap(), Outcome::Optimal);
}

#[test]
fn small_graphs() {
    assert_eq!(optimize(&k3()).unwrap().count, 1);
    let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(optimize(&k4).unwrap().count, 0);
    assert_eq!(optimize(&petersen()).unwrap().count, 0);
    let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    assert_eq!(optimize(&c5).unwrap().count, 1);
}

#[test]
fn single_edge() {
    let i = Instance::from_json(
        r#"{"variables":["e"],"constraints":[
            {"id":"u","scope":["e"],"tuples":["1"]},
            {"id":"w","scope":["e"],"tuples":["1"]}]}"#,
    )
    .unwrap();
    assert_eq!(optimize(&i).unwrap().count, 0);
}

#[test]
fn refuses_non_even_constraints() {
    let i = Instance::from_json(
        r#"{"variables":["x","y"],"constraints":[
            {"id":"A","scope":["x","y"],"tuples":["00","10","01"]},
            {"id":"B","scope":["x","y"],"tuples":["11"]}]}"#,
    )
    .unwrap();
    assert!(matches!(optimize(&i), Err(Error::NotEvenDeltaMatroid(name)) if name == "A"));
}

#[test]
fn rejects_invalid_start() {
    let i = k3();
    let mut f = i.initial_labeling();
    f.tuple_mut(crate::ConstraintId(0)).flip(0);
    assert!(matches!(improve(&i, &f), Err(Error::InvalidLabeling(_))));
}

#[test]
fn improvement_removes_two() {
    let i = petersen();
    let f = i.initial_labeling();
    let before = i.inconsistency_count(&f);
    match improve(&i, &f).unwrap() {
        Outcome::Improved(g) => {
            assert!(i.is_valid(&g));
            assert_eq!(i.inconsistency_count(&g) + 2, before);
        }
        Outcome::Optimal => panic!("initial labeling of the Petersen graph is not optimal"),
    }
}

#[test]
fn matches_oracle_on_random_instances() {
    let mut rng = seeded(7);
    let mut checker = Checker::default();
    for _ in 0..300 {
        let i = random_even_instance(&mut rng, 6, 4);
        let start = random_valid_labeling(&mut rng, &i);
        let got = optimize_with(&i, start, &mut checker).unwrap();
        assert!(i.is_valid(&got.labeling));
        assert_eq!(got.count, brute_force_optimum(&i).unwrap().count, "{}", i.to_spec().to_json());
    }
    assert!(checker.violations.is_empty(), "{:?}", &checker.violations[..checker.violations.len().min(5)]);
    assert!(checker.stats.contractions > 0);
}

#[test]
fn runs_are_deterministic() {
    let mut rng = seeded(11);
    let i = random_even_instance(&mut rng, 6, 4);
    let trace = || {
        let mut t = Trace::new(Vec::new());
        optimize_with(&i, i.initial_labeling(), &mut t).unwrap();
        t.finish().unwrap()
    };
    assert_eq!(trace(), trace());
}

#[test]
fn trace_lines_are_json() {
    let mut t = Trace::new(Vec::new());
    optimize_with(&petersen(), petersen().initial_labeling(), &mut t).unwrap();
    let out = String::from_utf8(t.finish().unwrap()).unwrap();
    let events: Vec<String> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["event"].as_str().unwrap().to_string())
        .collect();
    assert!(events.contains(&"augment".to_string()));
    assert_eq!(events.last().map(String::as_str), Some("optimal"));
}

