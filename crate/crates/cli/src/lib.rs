//! Command-line front end for exact flat-band analysis.
//!
//! Commands read a JSON graph file (see [`input`]), run the analysis in
//! `flatband-core`, and return a report document plus an exit code:
//! `0` success or no flat band, `2` input error, `10` flat band found,
//! `11` inconsistent random trials. The `verify-theorem` sweep exits `1`
//! when the two oracles disagree on any graph.

pub mod commands;
pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use flatband_core::sampling::GraphBounds;

pub use commands::{CliError, Outcome};
pub use input::{GraphSpecFile, InputError, LabelMode, ParsedGraph};

#[derive(Debug, Parser)]
#[command(name = "flatband", version, about = "Exact flat-band analysis of periodic graph operators")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LabelArg {
    Auto,
    Given,
    Random,
}

impl From<LabelArg> for LabelMode {
    fn from(a: LabelArg) -> Self {
        match a {
            LabelArg::Auto => LabelMode::Auto,
            LabelArg::Given => LabelMode::Given,
            LabelArg::Random => LabelMode::Random,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Floquet matrix, dispersion polynomial and flat bands of one labeling.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// auto: file values, missing ones random; given: file values only;
        /// random: ignore file values.
        #[arg(long, value_enum, default_value_t = LabelArg::Auto)]
        labels: LabelArg,
    },
    /// Flat bands for `trials` random labelings; unanimity decides.
    Generic {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generic Newton polytope, vertical faces and independence witnesses.
    Polytope {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the exact symbolic support instead of sampling.
        #[arg(long)]
        exact: bool,
    },
    /// Compares the support-0 criterion with the algebraic flat-band test on
    /// random graphs. Offsets lie in {-1,0,1}^d. Most generated graphs have a
    /// connected quotient; disconnected ones are kept.
    VerifyTheorem {
        #[arg(long, default_value_t = 2)]
        dims: usize,
        #[arg(long, default_value_t = 4)]
        max_orbits: usize,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random labelings per graph.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Samples band functions on a torus grid and flags flat bands.
    Bands {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        resolution: usize,
        /// Flatness below this flags a band.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// CSV output: theta1..thetad, lambda1..lambdan.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = LabelArg::Auto)]
        labels: LabelArg,
    },
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze { file, seed, labels } => commands::analyze(file, *seed, (*labels).into()),
        Command::Generic { file, trials, seed } => commands::generic(file, *trials, *seed),
        Command::Polytope { file, trials, seed, exact } => commands::polytope(file, *trials, *seed, *exact),
        Command::VerifyTheorem { dims, max_orbits, max_edges, count, seed, trials } => {
            if *dims == 0 || *max_orbits == 0 {
                return Err(CliError::Usage("--dims and --max-orbits must be at least 1".to_string()));
            }
            commands::verify_theorem(commands::SweepOptions {
                bounds: GraphBounds { max_dimension: *dims, max_orbits: *max_orbits, max_classes: *max_edges },
                count: *count,
                seed: *seed,
                trials: *trials,
            })
        }
        Command::Bands { file, resolution, tol, out, seed, labels } => commands::bands(
            file,
            &commands::BandsOptions {
                resolution: *resolution,
                tol: *tol,
                out: out.clone(),
                labels: (*labels).into(),
                seed: *seed,
            },
        ),
    }
}

/// The report as it is printed.
pub fn render(outcome: &Outcome, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        s.push('\n');
        s
    } else {
        report::render_text(&outcome.report)
    }
}
