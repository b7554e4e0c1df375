use std::collections::BTreeSet;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use edgecsp::coverable::{
    even_zebra_cover_search, is_coindependent, is_compact_like, solve_coverable_with, verify_cover, CoverOracle,
    CoverableOptions, OracleMap, OnesCount, DEFAULT_ZEBRA_ARITY,
};
use edgecsp::fixtures::verify_fixtures;
use edgecsp::generate::{random_coverable_instance, random_even_instance, seeded};
use edgecsp::instance::brute_force_optimum_bounded;
use edgecsp::instance::DEFAULT_ENUMERATION_BOUND;
use edgecsp::matching::{realize, GraphSpec};
use edgecsp::solver::{optimize_with, NoopObserver, Trace};
use edgecsp::{
    normalize_degree, planar_tractability_report, EdgeLabeling, Error, Instance, InstanceSpec, NamedRelation,
    Relation, Tuple,
};
use serde_json::{json, Value};

use crate::{Command, CoverClass, Kind};

const SCHEMA_VERSION: u32 = 1;

/// A failed command: the exit code and what to print.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::ArityMismatch { .. }
            | Error::EmptyRelation
            | Error::UnknownVariable(_)
            | Error::DuplicateVariable(_)
            | Error::OverlappingScopes(_)
            | Error::PositionOutOfRange { .. }
            | Error::InvalidInstance(_)
            | Error::DegreeTooLarge { .. }
            | Error::LabelingMismatch(_)
            | Error::Graph(_) => 2,
            Error::Internal(_) | Error::CoverRejected { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn emit(mut value: Value) {
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
}

fn load_instance(path: &Path, normalize: bool) -> Result<(InstanceSpec, Instance), Failure> {
    let spec = InstanceSpec::from_json(&read(path)?)?;
    let instance = if normalize { normalize_degree(&spec)? } else { spec.build()? };
    Ok((spec, instance))
}

fn load_relation(path: &Path) -> Result<NamedRelation, Failure> {
    Ok(NamedRelation::from_json(&read(path)?)?)
}

fn labeling_json(instance: &Instance, f: &EdgeLabeling) -> Value {
    serde_json::from_str(&instance.labeling_to_json(f)).expect("labelings serialize to JSON")
}

/// `{"count", "agree"}` against exhaustive search, or why it was skipped.
fn oracle_check(instance: &Instance, count: usize) -> Result<Value, Failure> {
    match brute_force_optimum_bounded(instance, DEFAULT_ENUMERATION_BOUND) {
        Ok(best) if best.count == count => Ok(json!({ "count": best.count, "agree": true })),
        Ok(best) => Err(Failure::new(3, format!("solver found {count} but exhaustive search found {}", best.count))),
        Err(e @ Error::BoundExceeded { .. }) => {
            eprintln!("oracle skipped: {e}");
            Ok(json!({ "skipped": e.to_string() }))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Solve { instance, trace, verify_oracle, normalize } => solve(&instance, trace.as_deref(), verify_oracle, normalize),
        Command::SolveCoverable { instance, verify_oracle, normalize, no_strict } => {
            solve_coverable(&instance, verify_oracle, normalize, !no_strict)
        }
        Command::CheckRelation { relation } => check_relation(&relation),
        Command::CheckCover { relation, alpha, cover, class, levels } => {
            check_cover(&relation, &alpha, cover.as_deref(), class, levels)
        }
        Command::Oracle { instance, bound } => oracle(&instance, bound.unwrap_or(DEFAULT_ENUMERATION_BOUND)),
        Command::Realize { graph } => realize_graph(&graph),
        Command::PlanarReport { relations } => planar_report(&relations),
        Command::VerifyFixtures => fixtures(),
        Command::Generate { kind, seed, constraints, arity } => generate(kind, seed, constraints, arity),
    }
}

fn solve(path: &Path, trace: Option<&Path>, verify_oracle: bool, normalize: bool) -> Outcome {
    let (_, instance) = load_instance(path, normalize)?;
    let start = instance.initial_labeling();
    let solution = match trace {
        Some(out) => {
            let file = File::create(out).map_err(|e| Failure::new(1, format!("cannot write {}: {e}", out.display())))?;
            let mut t = Trace::new(BufWriter::new(file));
            let solution = optimize_with(&instance, start, &mut t)?;
            t.finish().map_err(|e| Failure::new(1, format!("cannot write {}: {e}", out.display())))?;
            solution
        }
        None => optimize_with(&instance, start, &mut NoopObserver)?,
    };
    let oracle = if verify_oracle { oracle_check(&instance, solution.count)? } else { Value::Null };
    eprintln!(
        "optimum {} inconsistent variables ({} contractions, {} augmentations)",
        solution.count, solution.stats.contractions, solution.stats.augmentations
    );
    emit(json!({
        "count": solution.count,
        "labeling": labeling_json(&instance, &solution.labeling),
        "stats": solution.stats,
        "oracle": oracle,
    }));
    Ok(())
}

fn solve_coverable(path: &Path, verify_oracle: bool, normalize: bool, strict: bool) -> Outcome {
    let (spec, instance) = load_instance(path, normalize)?;
    let oracles = OracleMap::from_spec(&spec, &instance)?;
    let solution = solve_coverable_with(&instance, &oracles, instance.initial_labeling(), CoverableOptions { strict })?;
    let oracle = if verify_oracle { oracle_check(&instance, solution.count)? } else { Value::Null };
    eprintln!("optimum {} inconsistent variables ({} improvements)", solution.count, solution.improvements);
    emit(json!({
        "count": solution.count,
        "labeling": labeling_json(&instance, &solution.labeling),
        "improvements": solution.improvements,
        "oracle": oracle,
    }));
    Ok(())
}

fn check_relation(path: &Path) -> Outcome {
    let named = load_relation(path)?;
    let m = named.relation();
    let delta_matroid = m.is_delta_matroid()?;
    let levels: BTreeSet<usize> = m.iter().map(Tuple::count_ones).collect();
    let compact = is_compact_like(m, &OnesCount, &levels)?;
    let d_even = if m.arity() >= 2 { Some(m.d_transform()?.is_even_delta_matroid()) } else { None };
    eprintln!("{} tuples of arity {}", m.len(), m.arity());
    emit(json!({
        "arity": m.arity(),
        "tuples": m.len(),
        "delta_matroid": delta_matroid,
        "even": m.is_even(),
        "coindependent": is_coindependent(m)?,
        "compact_witness_ok": compact,
        "compact_levels": if compact { json!(levels) } else { Value::Null },
        "interference_free": delta_matroid && !m.contains_interference_minor(),
        "self_complementary": m.is_self_complementary(),
        "d_transform_even": d_even,
    }));
    Ok(())
}

fn check_cover(path: &Path, alpha: &str, cover: Option<&Path>, class: Option<CoverClass>, levels: Vec<usize>) -> Outcome {
    let named = load_relation(path)?;
    let m = named.relation();
    let alpha = Tuple::parse(alpha)?;
    if alpha.len() != m.arity() {
        return Err(Error::ArityMismatch { expected: m.arity(), found: alpha.len() }.into());
    }
    let built_in = class.is_some();
    let cover: Option<Relation> = match (cover, class) {
        (Some(file), _) => Some(load_relation(file)?.into_relation()),
        (None, Some(CoverClass::Zebra)) => even_zebra_cover_search(m, &alpha, DEFAULT_ZEBRA_ARITY)?,
        (None, Some(c)) => {
            let oracle = match c {
                CoverClass::Even => CoverOracle::Even,
                CoverClass::Coindependent => CoverOracle::CoIndependent,
                CoverClass::InterferenceFree => CoverOracle::InterferenceFree,
                CoverClass::Compact => CoverOracle::compact_ones(levels),
                CoverClass::Zebra => unreachable!("handled above"),
            };
            Some(oracle.cover(m, &alpha)?)
        }
        (None, None) => return Err(Failure::new(2, "give --cover or --class")),
    };
    let Some(cover) = cover else {
        eprintln!("no even-zebra cover exists at {}", alpha.to_bit_string());
        emit(json!({ "alpha": alpha.to_bit_string(), "cover": Value::Null, "ok": false }));
        return Err(Failure::new(1, "no cover found"));
    };
    let verdict = verify_cover(m, &alpha, &cover);
    emit(json!({
        "alpha": alpha.to_bit_string(),
        "cover": cover.to_strings(),
        "ok": verdict.is_ok(),
        "violation": verdict.as_ref().err().map(|v| json!({ "item": v.item, "detail": v.detail })),
    }));
    match verdict {
        Ok(()) => {
            eprintln!("cover accepted");
            Ok(())
        }
        // A built-in oracle producing a bad cover is a bug, a supplied one is not.
        Err(v) if built_in => Err(Failure::new(3, format!("built-in cover rejected: {v}"))),
        Err(v) => Err(Failure::new(1, format!("cover rejected: {v}"))),
    }
}

fn oracle(path: &Path, bound: u128) -> Outcome {
    let (_, instance) = load_instance(path, false)?;
    let best = brute_force_optimum_bounded(&instance, bound)?;
    eprintln!("exhaustive optimum {}", best.count);
    emit(json!({ "count": best.count, "labeling": labeling_json(&instance, &best.witness) }));
    Ok(())
}

fn realize_graph(path: &Path) -> Outcome {
    let spec = GraphSpec::from_json(&read(path)?)?;
    let (g, pins) = spec.build()?;
    let r = realize(&g, &pins)?;
    eprintln!("{} of {} pin deletions leave a perfect matching", r.len(), 1u64 << pins.len());
    emit(json!({
        "scope": spec.pins,
        "tuples": r.to_strings(),
        "even_delta_matroid": r.is_even_delta_matroid(),
    }));
    Ok(())
}

fn planar_report(paths: &[std::path::PathBuf]) -> Outcome {
    let gamma = paths.iter().map(|p| load_relation(p).map(NamedRelation::into_relation)).collect::<Result<Vec<_>, _>>()?;
    let report = planar_tractability_report(&gamma)?;
    eprintln!("condition {:?}", report.verdict);
    emit(serde_json::to_value(&report).expect("report serializes"));
    Ok(())
}

fn fixtures() -> Outcome {
    let results = verify_fixtures();
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        eprintln!("{} {}", if r.passed { "pass" } else { "FAIL" }, r.name);
    }
    emit(json!({ "fixtures": results, "failed": failed }));
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::new(3, format!("{failed} fixtures failed")))
    }
}

fn generate(kind: Kind, seed: u64, constraints: usize, arity: usize) -> Outcome {
    if constraints < 2 || arity == 0 || arity > 10 {
        return Err(Failure::new(1, "need at least 2 constraints and an arity between 1 and 10"));
    }
    let mut rng = seeded(seed);
    let spec = match kind {
        Kind::Even => random_even_instance(&mut rng, constraints, arity).to_spec(),
        Kind::Coverable => {
            let (instance, oracles) = random_coverable_instance(&mut rng, constraints, arity);
            let mut spec = instance.to_spec();
            for (c, id) in spec.constraints.iter_mut().zip(instance.constraint_ids()) {
                c.oracle = oracles.get(id).to_spec();
            }
            spec
        }
    };
    eprintln!("{} variables, {} constraints", spec.variables.len(), spec.constraints.len());
    println!("{}", spec.to_json());
    Ok(())
}
