//! The worked examples from the literature, checked end to end.

use serde::Serialize;

use crate::coverable::{
    even_zebra_cover_search, is_compact_like, verify_cover, OnesCount, DEFAULT_ZEBRA_ARITY,
};
use crate::dmatroid::{even_relation, interference_matroid, planar_tractability_report, Relation, Tuple, Verdict};
use crate::instance::{brute_force_optimum, validate_instance};
use crate::matching::{
    admissible_pairs, check_pair_decomposition, counterexample_arity6, five_pin_gadget, gadget_graph,
    matching_relation, merged_gadget_instance, realize, three_pin_gadget, FIVE_PIN_RELATION, THREE_PIN_RELATION,
};
use crate::solver::optimize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub name: &'static str,
    pub passed: bool,
    /// Empty when the fixture passed.
    pub detail: String,
}

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn rel(tuples: &[&str]) -> Result<Relation, String> {
    Relation::from_strs(tuples).map_err(|e| e.to_string())
}

fn tuple(s: &str) -> Tuple {
    Tuple::parse(s).expect("fixed tuple")
}

fn interference_membership() -> Result<(), String> {
    let m = interference_matroid();
    ensure(m.has(&tuple("111")), "111 should be a member")?;
    ensure(!m.has(&tuple("100")), "100 should not be a member")
}

fn interference_flags() -> Result<(), String> {
    let m = interference_matroid();
    ensure(m.is_delta_matroid().map_err(|e| e.to_string())?, "not a Δ-matroid")?;
    ensure(!m.is_even(), "reported as even")?;
    ensure(m.contains_interference_minor(), "no interference minor found in itself")
}

fn gadget_relations_are_even() -> Result<(), String> {
    for r in [rel(&FIVE_PIN_RELATION)?, rel(&THREE_PIN_RELATION)?] {
        ensure(r.is_even_delta_matroid(), "not an even Δ-matroid")?;
        ensure(!r.contains_interference_minor(), "even relation with an interference minor")?;
    }
    Ok(())
}

fn square_of_interference() -> Result<(), String> {
    let m = interference_matroid();
    let n = m.direct_product(&m);
    ensure(n.arity() == 6 && n.len() == 25, &format!("arity {} with {} tuples", n.arity(), n.len()))
}

fn even2_planar_condition() -> Result<(), String> {
    let report = planar_tractability_report(&[even_relation(2)]).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Holds, &format!("verdict {:?}", report.verdict))
}

fn interference_covers() -> Result<(), String> {
    let m = interference_matroid();
    for (alpha, expected) in [("000", rel(&["000", "110", "101", "011"])?), ("111", rel(&["111"])?)] {
        verify_cover(&m, &tuple(alpha), &expected).map_err(|v| format!("at {alpha}: {v}"))?;
    }
    Ok(())
}

fn zebra_witness() -> Result<(), String> {
    let m = interference_matroid();
    let found = even_zebra_cover_search(&m, &tuple("000"), DEFAULT_ZEBRA_ARITY).map_err(|e| e.to_string())?;
    ensure(found == Some(rel(&["000", "110", "101", "011"])?), "unexpected witness at 000")
}

fn square_is_not_a_zebra() -> Result<(), String> {
    let m = interference_matroid();
    let n = m.direct_product(&m);
    let found = even_zebra_cover_search(&n, &tuple("111000"), DEFAULT_ZEBRA_ARITY).map_err(|e| e.to_string())?;
    ensure(found.is_none(), "found a cover for the odd class")
}

fn one_hot_is_compact() -> Result<(), String> {
    for n in 1..=6 {
        let m = matching_relation(n).map_err(|e| e.to_string())?;
        ensure(m.is_even_delta_matroid(), "one-hot relation is not an even Δ-matroid")?;
        ensure(is_compact_like(&m, &OnesCount, &[1].into()).map_err(|e| e.to_string())?, "not compact")?;
    }
    Ok(())
}

fn gadgets_realize() -> Result<(), String> {
    let (g, pins) = five_pin_gadget();
    ensure(realize(&g, &pins).map_err(|e| e.to_string())? == rel(&FIVE_PIN_RELATION)?, "five-pin gadget")?;
    let (g, pins) = three_pin_gadget();
    ensure(realize(&g, &pins).map_err(|e| e.to_string())? == rel(&THREE_PIN_RELATION)?, "three-pin gadget")
}

fn merged_instance() -> Result<(), String> {
    let merged = merged_gadget_instance();
    ensure(validate_instance(&merged.to_spec()).is_empty(), "instance has diagnostics")?;
    let best = optimize(&merged).map_err(|e| e.to_string())?.count;
    let oracle = brute_force_optimum(&merged).map_err(|e| e.to_string())?.count;
    ensure(best == oracle, &format!("solver {best}, oracle {oracle}"))?;
    let perfect = gadget_graph().has_perfect_matching().map_err(|e| e.to_string())?;
    ensure((best == 0) == perfect, "merged instance disagrees with the graph")
}

fn counterexample() -> Result<(), String> {
    let m = counterexample_arity6();
    ensure(m.len() == 19, &format!("{} tuples", m.len()))?;
    ensure(m.is_even_delta_matroid(), "not an even Δ-matroid")?;
    let (f, g) = (Tuple::zeros(6), Tuple::ones(6));
    let pairs = admissible_pairs(&m, &f, &g).map_err(|e| e.to_string())?;
    ensure(pairs == [(0, 3), (1, 2), (2, 3), (2, 4), (3, 5)], &format!("admissible pairs {pairs:?}"))?;
    let split = check_pair_decomposition(&m, &f, &g).map_err(|e| e.to_string())?;
    ensure(split.is_none(), "found a pair decomposition")
}

const FIXTURES: &[(&str, Check)] = &[
    ("interference membership", interference_membership),
    ("interference is an odd Δ-matroid", interference_flags),
    ("gadget relations are even Δ-matroids", gadget_relations_are_even),
    ("interference squared has 25 tuples", square_of_interference),
    ("EVEN_2 meets the planar condition", even2_planar_condition),
    ("interference covers", interference_covers),
    ("even-zebra witness for interference", zebra_witness),
    ("interference squared is not an even-zebra", square_is_not_a_zebra),
    ("one-hot relations are compact", one_hot_is_compact),
    ("gadgets realize their relations", gadgets_realize),
    ("merged gadget instance", merged_instance),
    ("arity-6 counterexample", counterexample),
];

/// Runs every fixture, in a fixed order.
pub fn verify_fixtures() -> Vec<FixtureResult> {
    FIXTURES
        .iter()
        .map(|&(name, check)| match check() {
            Ok(()) => FixtureResult { name, passed: true, detail: String::new() },
            Err(detail) => FixtureResult { name, passed: false, detail },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_fixtures_pass() {
        for r in super::verify_fixtures() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
