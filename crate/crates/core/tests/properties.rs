use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use edgecsp::coverable::{compact_relation, is_compact_like, solve_coverable, OnesCount};
use edgecsp::generate::{
    even_delta_matroids, random_coverable_instance, random_even_instance, random_level_set, random_valid_labeling,
    seeded,
};
use edgecsp::instance::for_each_valid_labeling;
use edgecsp::matching::{check_pair_decomposition, graph_to_instance, realize, SimpleGraph};
use edgecsp::solver::{improve, optimize_with, Trace};
use edgecsp::walks::{apply_walk, is_augmenting, Walk};
use edgecsp::{brute_force_optimum, optimize, FlipSet, Instance, Outcome, Relation, Tuple};

fn relation(arity: usize, set: u64) -> Relation {
    Relation::new(arity, (0..1u64 << arity).filter(|i| set >> i & 1 == 1).map(|i| Tuple::from_index(i, arity))).unwrap()
}

/// Any nonempty relation of arity 1 to 4.
fn any_relation() -> impl Strategy<Value = Relation> {
    (1usize..=4).prop_flat_map(|n| (1u64..1 << (1 << n)).prop_map(move |set| relation(n, set)))
}

fn any_relation_up_to(max: usize) -> impl Strategy<Value = Relation> {
    (1usize..=max).prop_flat_map(|n| (1u64..1 << (1 << n)).prop_map(move |set| relation(n, set)))
}

/// A Δ-matroid check written directly on bit masks.
fn delta_matroid_by_masks(m: &Relation) -> bool {
    let set: Vec<u64> = m.iter().map(Tuple::index).collect();
    let has = |x: u64| set.contains(&x);
    set.iter().all(|&f| {
        set.iter().all(|&g| {
            let d = f ^ g;
            (0..m.arity()).filter(|v| d >> v & 1 == 1).all(|v| {
                let fv = f ^ (1 << v);
                has(fv) || (0..m.arity()).any(|u| u != v && d >> u & 1 == 1 && has(fv ^ (1 << u)))
            })
        })
    })
}

fn even_dm(seed: u64, max_arity: usize) -> Relation {
    let mut rng = seeded(seed);
    let n = rng.gen_range(1..=max_arity.min(4));
    even_delta_matroids(n).unwrap().choose(&mut rng).unwrap().clone()
}

/// A Δ-matroid of arity 2 to 5: a product of two catalog pieces, or a
/// ones-count level set.
fn delta_matroid_up_to5(seed: u64) -> Relation {
    let mut rng = seeded(seed);
    let n = rng.gen_range(2..=5);
    if rng.gen_bool(0.3) {
        let levels = random_level_set(&mut rng, n);
        return compact_relation(n, &OnesCount, &levels).unwrap();
    }
    let k = rng.gen_range(1..n);
    let mut pick = |a: usize| even_delta_matroids(a.min(4)).unwrap().choose(&mut rng).unwrap().clone();
    pick(k).direct_product(&pick(n - k))
}

fn random_walk(instance: &Instance, seed: u64) -> Walk {
    let mut rng = seeded(seed);
    let mut vars = vec![instance.vars().nth(rng.gen_range(0..instance.num_vars())).unwrap()];
    let mut cons = Vec::new();
    let mut at = instance.incidence(vars[0])[rng.gen_range(0..2)].0;
    for _ in 0..rng.gen_range(0..8) {
        let here = vars.last().copied().unwrap();
        let choices: Vec<_> = instance.constraint(at).scope.iter().copied().filter(|&w| w != here).collect();
        let Some(&w) = choices.choose(&mut rng) else { break };
        let (mut v2, mut c2) = (vars.clone(), cons.clone());
        v2.push(w);
        c2.push(at);
        if Walk::new(instance, v2.clone(), c2.clone()).is_err() {
            break;
        }
        vars = v2;
        cons = c2;
        at = instance.other_end(w, at).0;
    }
    Walk::new(instance, vars, cons).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn delta_matroid_check_agrees_with_masks(m in any_relation()) {
        prop_assert_eq!(m.is_delta_matroid().unwrap(), delta_matroid_by_masks(&m));
        let parities: std::collections::BTreeSet<bool> = m.iter().map(Tuple::parity).collect();
        prop_assert_eq!(m.is_even(), parities.len() == 1);
    }

    #[test]
    fn products_stay_delta_matroids(a in any_relation_up_to(3), b in any_relation_up_to(3)) {
        prop_assume!(a.is_delta_matroid().unwrap() && b.is_delta_matroid().unwrap());
        let p = a.direct_product(&b);
        prop_assert!(p.is_delta_matroid().unwrap());
        prop_assert_eq!(p.len(), a.len() * b.len());
        if a.is_even() && b.is_even() {
            prop_assert!(p.is_even());
        }
    }

    #[test]
    fn identification_keeps_delta_matroids(seed in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let m = delta_matroid_up_to5(seed);
        let w1 = a % (m.arity() - 1);
        let w2 = w1 + 1 + b % (m.arity() - 1 - w1);
        prop_assert!(m.is_delta_matroid().unwrap());
        let id = m.identify(w1, w2).unwrap();
        prop_assert!(id.is_empty() || id.is_delta_matroid().unwrap());
    }

    #[test]
    fn d_transform_halves_self_complementary(n in 2usize..=5, set in any::<u64>()) {
        // Choose tuples with a leading zero and add every complement.
        let half: Vec<Tuple> = (0..1u64 << (n - 1)).filter(|i| set >> i & 1 == 1).map(|i| Tuple::from_index(i, n)).collect();
        prop_assume!(!half.is_empty());
        let all: Vec<Tuple> = half.iter().flat_map(|t| [t.clone(), t.complement()]).collect();
        let r = Relation::new(n, all).unwrap();
        prop_assert!(r.is_self_complementary());
        prop_assert_eq!(r.d_transform().unwrap().len() * 2, r.len());
    }

    #[test]
    fn flips_and_permutations_preserve_flags(m in any_relation(), flips in any::<u8>(), seed in any::<u64>()) {
        let n = m.arity();
        let f = FlipSet::new((0..n).filter(|p| flips >> p & 1 == 1), n).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut seeded(seed));
        let image = m.flip_values(&f).permute(&order).unwrap();
        prop_assert_eq!(image.is_delta_matroid().unwrap(), m.is_delta_matroid().unwrap());
        prop_assert_eq!(image.is_even(), m.is_even());
    }

    #[test]
    fn even_delta_matroids_have_no_interference_minor(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (even_dm(s1, 4), even_dm(s2, 1));
        prop_assert!(!a.contains_interference_minor());
        let p = a.direct_product(&b);
        prop_assert!(!p.contains_interference_minor());
    }

    #[test]
    fn compact_like_relations_are_delta_matroids(n in 1usize..=5, seed in any::<u64>()) {
        let levels = random_level_set(&mut seeded(seed), n);
        let m = compact_relation(n, &OnesCount, &levels).unwrap();
        prop_assert!(is_compact_like(&m, &OnesCount, &levels).unwrap());
        prop_assert!(m.is_delta_matroid().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counts_share_one_parity(seed in any::<u64>()) {
        let instance = random_even_instance(&mut seeded(seed), 4, 3);
        let mut parities = std::collections::BTreeSet::new();
        for_each_valid_labeling(&instance, 1 << 16, |f| {
            parities.insert(instance.inconsistency_count(f) % 2);
        }).unwrap();
        prop_assert!(parities.len() <= 1);
    }

    #[test]
    fn walks_are_involutions(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let instance = random_even_instance(&mut rng, 5, 4);
        let f = random_valid_labeling(&mut rng, &instance);
        let q = random_walk(&instance, rng.gen());
        let g = apply_walk(&instance, &f, &q).unwrap();
        prop_assert_eq!(apply_walk(&instance, &g, &q).unwrap(), f.clone());
        if is_augmenting(&instance, &f, &q) {
            prop_assert!(instance.is_valid(&g));
            let drop = if q.end().is_some() { 2 } else { 1 };
            prop_assert_eq!(instance.inconsistency_count(&g) + drop, instance.inconsistency_count(&f));
        }
    }

    #[test]
    fn improve_is_sound(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let instance = random_even_instance(&mut rng, 6, 4);
        let f = random_valid_labeling(&mut rng, &instance);
        match improve(&instance, &f).unwrap() {
            Outcome::Improved(g) => {
                prop_assert!(instance.is_valid(&g));
                prop_assert_eq!(instance.inconsistency_count(&g) + 2, instance.inconsistency_count(&f));
            }
            Outcome::Optimal => {
                prop_assert_eq!(instance.inconsistency_count(&f), brute_force_optimum(&instance).unwrap().count);
            }
        }
    }

    #[test]
    fn traces_are_deterministic(seed in any::<u64>()) {
        let instance = random_even_instance(&mut seeded(seed), 6, 4);
        let run = || {
            let mut trace = Trace::new(Vec::new());
            let s = optimize_with(&instance, instance.initial_labeling(), &mut trace).unwrap();
            (s.labeling, trace.finish().unwrap())
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn matching_optimum_is_deficiency(n in 2usize..=9, raw in prop::collection::vec((0usize..9, 1usize..9), 1..16)) {
        let mut edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, d)| (a % n, (a % n + d % (n - 1).max(1) + 1) % n)).collect();
        edges.retain(|&(a, b)| a != b);
        for v in 0..n {
            if !edges.iter().any(|&(a, b)| a == v || b == v) {
                edges.push((v, (v + 1) % n));
            }
        }
        let g = SimpleGraph::from_edges(n, &edges).unwrap();
        let count = optimize(&graph_to_instance(&g).unwrap()).unwrap().count;
        prop_assert_eq!(count, n - 2 * g.max_matching_size().unwrap());
    }

    #[test]
    fn realized_relations_are_even_delta_matroids(
        n in 2usize..=7,
        raw in prop::collection::vec((0usize..7, 1usize..7), 1..12),
        pins in 1usize..=4,
    ) {
        let edges: Vec<(usize, usize)> =
            raw.into_iter().map(|(a, d)| (a % n, (a % n + 1 + d % (n - 1)) % n)).collect();
        let g = SimpleGraph::from_edges(n, &edges).unwrap();
        let pins: Vec<usize> = (0..pins.min(n)).collect();
        let r = realize(&g, &pins).unwrap();
        prop_assume!(!r.is_empty());
        prop_assert!(r.is_even() && r.is_delta_matroid().unwrap());
        for f in r.iter() {
            for h in r.iter() {
                prop_assert!(check_pair_decomposition(&r, f, h).unwrap().is_some());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coverable_solver_is_optimal(seed in any::<u64>()) {
        let (instance, oracles) = random_coverable_instance(&mut seeded(seed), 5, 4);
        let got = solve_coverable(&instance, &oracles).unwrap().count;
        prop_assert_eq!(got, brute_force_optimum(&instance).unwrap().count);
    }
}
