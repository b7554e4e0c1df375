use std::io::Write;

use serde_json::json;

use crate::instance::{ConstraintId, EdgeLabeling, Instance, VarId};
use crate::solver::{BlossomData, ContractionRecord, Forest};
use crate::walks::{FDag, Walk};

/// Hooks into a solver run. Every method defaults to doing nothing.
///
/// `depth` counts the contractions currently stacked above the input
/// instance.
#[allow(unused_variables)]
pub trait SolverObserver {
    /// After the forest gains a node.
    fn forest_changed(&mut self, instance: &Instance, f: &EdgeLabeling, forest: &Forest) {}

    /// The forest with the closing edge `w C^t` added, right before an
    /// augmentation or a blossom.
    fn terminal_dag(&mut self, instance: &Instance, f: &EdgeLabeling, dag: &FDag) {}

    fn expanded(&mut self, instance: &Instance, v: VarId, c: ConstraintId, time: usize, depth: usize) {}

    fn augmented(&mut self, instance: &Instance, f: &EdgeLabeling, walk: &Walk, depth: usize) {}

    /// `f` is the labeling after any stem flip.
    fn blossom(&mut self, instance: &Instance, f: &EdgeLabeling, blossom: &BlossomData, depth: usize) {}

    /// `depth` is the depth of the contracted instance.
    fn contracted(&mut self, record: &ContractionRecord, depth: usize) {}

    fn lifted(&mut self, record: &ContractionRecord, g: &EdgeLabeling, depth: usize) {}

    fn optimal(&mut self, instance: &Instance, f: &EdgeLabeling, depth: usize) {}
}

/// Ignores everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoopObserver;

impl SolverObserver for NoopObserver {}

/// Sends every event to two observers.
pub struct Tee<A, B>(pub A, pub B);

impl<A: SolverObserver, B: SolverObserver> SolverObserver for Tee<A, B> {
    fn forest_changed(&mut self, instance: &Instance, f: &EdgeLabeling, forest: &Forest) {
        self.0.forest_changed(instance, f, forest);
        self.1.forest_changed(instance, f, forest);
    }
    fn terminal_dag(&mut self, instance: &Instance, f: &EdgeLabeling, dag: &FDag) {
        self.0.terminal_dag(instance, f, dag);
        self.1.terminal_dag(instance, f, dag);
    }
    fn expanded(&mut self, instance: &Instance, v: VarId, c: ConstraintId, time: usize, depth: usize) {
        self.0.expanded(instance, v, c, time, depth);
        self.1.expanded(instance, v, c, time, depth);
    }
    fn augmented(&mut self, instance: &Instance, f: &EdgeLabeling, walk: &Walk, depth: usize) {
        self.0.augmented(instance, f, walk, depth);
        self.1.augmented(instance, f, walk, depth);
    }
    fn blossom(&mut self, instance: &Instance, f: &EdgeLabeling, blossom: &BlossomData, depth: usize) {
        self.0.blossom(instance, f, blossom, depth);
        self.1.blossom(instance, f, blossom, depth);
    }
    fn contracted(&mut self, record: &ContractionRecord, depth: usize) {
        self.0.contracted(record, depth);
        self.1.contracted(record, depth);
    }
    fn lifted(&mut self, record: &ContractionRecord, g: &EdgeLabeling, depth: usize) {
        self.0.lifted(record, g, depth);
        self.1.lifted(record, g, depth);
    }
    fn optimal(&mut self, instance: &Instance, f: &EdgeLabeling, depth: usize) {
        self.0.optimal(instance, f, depth);
        self.1.optimal(instance, f, depth);
    }
}

impl<T: SolverObserver + ?Sized> SolverObserver for &mut T {
    fn forest_changed(&mut self, instance: &Instance, f: &EdgeLabeling, forest: &Forest) {
        (**self).forest_changed(instance, f, forest);
    }
    fn terminal_dag(&mut self, instance: &Instance, f: &EdgeLabeling, dag: &FDag) {
        (**self).terminal_dag(instance, f, dag);
    }
    fn expanded(&mut self, instance: &Instance, v: VarId, c: ConstraintId, time: usize, depth: usize) {
        (**self).expanded(instance, v, c, time, depth);
    }
    fn augmented(&mut self, instance: &Instance, f: &EdgeLabeling, walk: &Walk, depth: usize) {
        (**self).augmented(instance, f, walk, depth);
    }
    fn blossom(&mut self, instance: &Instance, f: &EdgeLabeling, blossom: &BlossomData, depth: usize) {
        (**self).blossom(instance, f, blossom, depth);
    }
    fn contracted(&mut self, record: &ContractionRecord, depth: usize) {
        (**self).contracted(record, depth);
    }
    fn lifted(&mut self, record: &ContractionRecord, g: &EdgeLabeling, depth: usize) {
        (**self).lifted(record, g, depth);
    }
    fn optimal(&mut self, instance: &Instance, f: &EdgeLabeling, depth: usize) {
        (**self).optimal(instance, f, depth);
    }
}

/// Counts what happened during a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Stats {
    pub expansions: usize,
    pub augmentations: usize,
    pub blossoms: usize,
    pub contractions: usize,
    pub lifts: usize,
    pub max_depth: usize,
}

impl SolverObserver for Stats {
    fn expanded(&mut self, _: &Instance, _: VarId, _: ConstraintId, _: usize, _: usize) {
        self.expansions += 1;
    }
    fn augmented(&mut self, _: &Instance, _: &EdgeLabeling, _: &Walk, _: usize) {
        self.augmentations += 1;
    }
    fn blossom(&mut self, _: &Instance, _: &EdgeLabeling, _: &BlossomData, _: usize) {
        self.blossoms += 1;
    }
    fn contracted(&mut self, _: &ContractionRecord, depth: usize) {
        self.contractions += 1;
        self.max_depth = self.max_depth.max(depth);
    }
    fn lifted(&mut self, _: &ContractionRecord, _: &EdgeLabeling, _: usize) {
        self.lifts += 1;
    }
}

/// Writes one JSON object per event and line.
pub struct Trace<W: Write> {
    out: W,
    error: Option<std::io::Error>,
}

impl<W: Write> Trace<W> {
    pub fn new(out: W) -> Self {
        Trace { out, error: None }
    }

    /// The writer, or the first write error.
    pub fn finish(self) -> std::io::Result<W> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(self.out),
        }
    }

    fn emit(&mut self, value: serde_json::Value) {
        if self.error.is_none() {
            if let Err(e) = writeln!(self.out, "{value}") {
                self.error = Some(e);
            }
        }
    }
}

impl<W: Write> SolverObserver for Trace<W> {
    fn expanded(&mut self, instance: &Instance, v: VarId, c: ConstraintId, time: usize, depth: usize) {
        self.emit(json!({
            "event": "expand",
            "depth": depth,
            "variable": instance.var_name(v),
            "constraint": instance.constraint(c).name,
            "time": time,
        }));
    }
    fn augmented(&mut self, instance: &Instance, f: &EdgeLabeling, walk: &Walk, depth: usize) {
        self.emit(json!({
            "event": "augment",
            "depth": depth,
            "walk": walk.display(instance),
            "inconsistencies": instance.inconsistency_count(f),
        }));
    }
    fn blossom(&mut self, instance: &Instance, _: &EdgeLabeling, b: &BlossomData, depth: usize) {
        self.emit(json!({
            "event": "blossom",
            "depth": depth,
            "walk": b.walk.display(instance),
            "ell": b.ell,
            "stem": b.stem.as_ref().map(|s| s.display(instance)),
        }));
    }
    fn contracted(&mut self, record: &ContractionRecord, depth: usize) {
        self.emit(json!({
            "event": "contract",
            "depth": depth,
            "variables": record.contracted.num_vars(),
            "constraints": record.contracted.num_constraints(),
            "hub": record.contracted.constraint(record.hub).name,
        }));
    }
    fn lifted(&mut self, record: &ContractionRecord, g: &EdgeLabeling, depth: usize) {
        self.emit(json!({
            "event": "lift",
            "depth": depth,
            "inconsistencies": record.original.inconsistency_count(g),
        }));
    }
    fn optimal(&mut self, instance: &Instance, f: &EdgeLabeling, depth: usize) {
        self.emit(json!({
            "event": "optimal",
            "depth": depth,
            "inconsistencies": instance.inconsistency_count(f),
        }));
    }
}
