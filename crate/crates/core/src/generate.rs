//! Seeded random instances for tests, benchmarks and the CLI.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coverable::{compact_relation, CoverOracle, OnesCount, OracleMap};
use crate::dmatroid::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::instance::{Constraint, EdgeLabeling, Instance, VarId};

/// Largest arity [`even_delta_matroids`] enumerates.
pub const MAX_CATALOG_ARITY: usize = 4;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn catalog(arity: usize, keep: fn(&Relation) -> bool) -> Vec<Relation> {
    let mut out = Vec::new();
    for odd in [false, true] {
        let pool: Vec<Tuple> = Relation::parity_class(arity, odd).tuples().to_vec();
        for mask in 1u64..(1 << pool.len()) {
            let rows = pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone());
            let r = Relation::new(arity, rows).expect("same arity");
            if keep(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Every nonempty even Δ-matroid of the given arity.
pub fn even_delta_matroids(arity: usize) -> Result<&'static [Relation]> {
    static CATALOG: OnceLock<Vec<Vec<Relation>>> = OnceLock::new();
    if arity == 0 || arity > MAX_CATALOG_ARITY {
        return Err(Error::ArityOutOfRange { arity, max: MAX_CATALOG_ARITY });
    }
    let all = CATALOG.get_or_init(|| (0..=MAX_CATALOG_ARITY).map(|a| if a == 0 { Vec::new() } else { catalog(a, Relation::is_even_delta_matroid) }).collect());
    Ok(&all[arity])
}

/// Wires constraints of the given arities into an edge CSP: every variable
/// joins two distinct constraints. `None` when no such wiring was found.
pub fn random_wiring<R: Rng>(rng: &mut R, arities: &[usize]) -> Option<Vec<Vec<VarId>>> {
    let mut stubs: Vec<usize> = arities.iter().enumerate().flat_map(|(c, &a)| std::iter::repeat_n(c, a)).collect();
    if stubs.len() % 2 == 1 {
        return None;
    }
    'attempt: for _ in 0..64 {
        stubs.shuffle(rng);
        let mut scopes = vec![Vec::new(); arities.len()];
        for (k, pair) in stubs.chunks(2).enumerate() {
            if pair[0] == pair[1] {
                continue 'attempt;
            }
            scopes[pair[0]].push(VarId(k));
            scopes[pair[1]].push(VarId(k));
        }
        return Some(scopes);
    }
    None
}

/// A random instance with `constraints` constraints whose relations come from
/// `pick(rng, arity)`.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    constraints: usize,
    max_arity: usize,
    mut pick: impl FnMut(&mut R, usize) -> Relation,
) -> Instance {
    assert!(constraints >= 2 && max_arity >= 1, "need two constraints and arity at least one");
    loop {
        let arities: Vec<usize> = (0..constraints).map(|_| rng.gen_range(1..=max_arity)).collect();
        let Some(scopes) = random_wiring(rng, &arities) else { continue };
        let num_vars = arities.iter().sum::<usize>() / 2;
        let cons = scopes
            .into_iter()
            .enumerate()
            .map(|(i, scope)| Constraint { name: format!("C{i}"), relation: pick(rng, scope.len()), scope })
            .collect();
        let names = (0..num_vars).map(|k| format!("x{k}")).collect();
        return Instance::new(names, cons).expect("wiring is an edge CSP");
    }
}

/// A random instance of even Δ-matroid constraints of arity at most
/// `max_arity` (at most [`MAX_CATALOG_ARITY`]) with 2 to `max_constraints`
/// constraints.
pub fn random_even_instance<R: Rng>(rng: &mut R, max_constraints: usize, max_arity: usize) -> Instance {
    let max_arity = max_arity.min(MAX_CATALOG_ARITY);
    let m = rng.gen_range(2..=max_constraints.max(2));
    random_instance(rng, m, max_arity, |rng, a| {
        even_delta_matroids(a).expect("catalog arity").choose(rng).expect("nonempty catalog").clone()
    })
}

/// A valid labeling with a uniformly random tuple at every constraint.
pub fn random_valid_labeling<R: Rng>(rng: &mut R, instance: &Instance) -> EdgeLabeling {
    EdgeLabeling::from_tuples(
        instance
            .constraints()
            .iter()
            .map(|c| c.relation.tuples().choose(rng).expect("nonempty relation").clone())
            .collect(),
    )
}

/// The complement of a random independent set of the hypercube, which is
/// always co-independent.
pub fn random_coindependent<R: Rng>(rng: &mut R, arity: usize) -> Relation {
    let mut order: Vec<u64> = (0..1u64 << arity).collect();
    order.shuffle(rng);
    let density = rng.gen_range(0.0..1.0);
    let mut out = vec![false; order.len()];
    for i in order {
        let free = (0..arity).all(|b| !out[(i ^ (1 << b)) as usize]);
        if free && rng.gen_bool(density) {
            out[i as usize] = true;
        }
    }
    let tuples = (0..1u64 << arity).filter(|&i| !out[i as usize]).map(|i| Tuple::from_index(i, arity));
    Relation::new(arity, tuples).expect("same arity")
}

/// A random nonempty 2-gap free subset of `0..=arity`.
pub fn random_level_set<R: Rng>(rng: &mut R, arity: usize) -> BTreeSet<usize> {
    let lo = rng.gen_range(0..=arity);
    let hi = rng.gen_range(lo..=arity);
    let mut s = BTreeSet::from([lo, hi]);
    let mut x = lo + 1;
    while x < hi {
        // A value may be skipped only if both neighbors stay.
        if rng.gen_bool(0.3) {
            s.insert(x + 1);
            x += 2;
        } else {
            s.insert(x);
            x += 1;
        }
    }
    s
}

/// A random instance mixing co-independent and ones-count compact
/// constraints, with their oracles.
pub fn random_coverable_instance<R: Rng>(
    rng: &mut R,
    max_constraints: usize,
    max_arity: usize,
) -> (Instance, OracleMap) {
    let m = rng.gen_range(2..=max_constraints.max(2));
    let mut oracles = Vec::new();
    let instance = random_instance(rng, m, max_arity, |rng, a| {
        if rng.gen_bool(0.5) {
            oracles.push(CoverOracle::CoIndependent);
            random_coindependent(rng, a)
        } else {
            let levels = random_level_set(rng, a);
            let r = compact_relation(a, &OnesCount, &levels).expect("small arity");
            oracles.push(CoverOracle::compact_ones(levels));
            r
        }
    });
    let map = OracleMap::new(&instance, oracles).expect("one oracle per constraint");
    (instance, map)
}
