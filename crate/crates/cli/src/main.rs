//! `edgecsp`: solve and inspect Boolean edge CSP instances.
//!
//! Machine-readable JSON goes to standard output, one-line summaries to
//! standard error. Exit codes: 0 success, 1 refusal, 2 unreadable input,
//! 3 internal error or a failed cross-check.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "edgecsp", version, about = "Solve Boolean edge CSPs with Δ-matroid constraints")]
struct Cli {
    /// Worker threads for the parallel parts (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimal labeling of an instance of even Δ-matroids.
    Solve {
        instance: PathBuf,
        /// Write one JSON event per line to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Compare the optimum with exhaustive search.
        #[arg(long)]
        verify_oracle: bool,
        /// Accept variables of degree one by doubling the instance.
        #[arg(long)]
        normalize: bool,
    },
    /// Optimal labeling of an instance whose constraints carry cover oracles.
    SolveCoverable {
        instance: PathBuf,
        #[arg(long)]
        verify_oracle: bool,
        #[arg(long)]
        normalize: bool,
        /// Skip checking every cover before use.
        #[arg(long)]
        no_strict: bool,
    },
    /// Structural flags of a relation.
    CheckRelation { relation: PathBuf },
    /// Check a cover of a relation at one of its tuples.
    CheckCover {
        relation: PathBuf,
        /// The tuple, as a bit string in scope order.
        #[arg(long)]
        alpha: String,
        /// A relation file holding the cover to check.
        #[arg(long, conflicts_with = "class", required_unless_present = "class")]
        cover: Option<PathBuf>,
        /// Build the cover with a built-in oracle instead.
        #[arg(long, value_enum)]
        class: Option<CoverClass>,
        /// Level set for the compact class, e.g. `1,2,4`.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
    },
    /// Exhaustive optimum.
    Oracle {
        instance: PathBuf,
        /// Refuse when more labelings than this would be enumerated.
        #[arg(long)]
        bound: Option<u128>,
    },
    /// The relation a graph realizes on its pins.
    Realize { graph: PathBuf },
    /// The self-complementarity condition of the planar dichotomy.
    PlanarReport {
        #[arg(required = true)]
        relations: Vec<PathBuf>,
    },
    /// Check the built-in worked examples.
    VerifyFixtures,
    /// Write a random instance.
    Generate {
        #[arg(long, value_enum, default_value_t = Kind::Even)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of constraints.
        #[arg(long, default_value_t = 6)]
        constraints: usize,
        /// Largest constraint arity; even instances stop at 4.
        #[arg(long, default_value_t = 4)]
        arity: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CoverClass {
    Even,
    Coindependent,
    Compact,
    InterferenceFree,
    /// Search for an even-zebra cover.
    Zebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Even Δ-matroid constraints.
    Even,
    /// Co-independent and compact constraints with their oracles.
    Coverable,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
