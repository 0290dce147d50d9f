//! `wallkit` command-line front end.
//!
//! Exit codes: 0 on success (or a positive verdict), 3 on a negative verdict,
//! 1 on any error.

mod commands;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "wallkit", version, about = "Exact lattice computations for wall divisors and monodromy")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice invariants.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Wall-divisor criteria.
    Wall {
        #[arg(value_enum)]
        criterion: CriterionArg,
        /// Mukai vector file.
        #[arg(long)]
        v: PathBuf,
        /// Divisor file.
        #[arg(long)]
        d: PathBuf,
        /// List every witness of every clause.
        #[arg(long)]
        all: bool,
    },
    /// Eichler orbits in lattices with a declared U+U split.
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// Kummer monodromy membership.
    Mon {
        #[command(subcommand)]
        cmd: MonCmd,
    },
    /// End-to-end scenarios producing traces and certificates.
    Scenario {
        #[command(subcommand)]
        cmd: ScenarioCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Rank, determinant, signature, parity and discriminant form.
    Info {
        /// Lattice file or standard label such as `kummer(5)`.
        lattice: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Bm,
    Yoshioka,
    Mz,
}

#[derive(clap::Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    pub x: PathBuf,
    #[arg(long)]
    pub y: PathBuf,
    /// Lattice file or label; defaults to the label stored in the vector files.
    #[arg(long)]
    pub lattice: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum OrbitCmd {
    /// Decide whether x and y lie in the same stable orbit.
    Check(OrbitArgs),
    /// Construct an orientation-preserving isometry sending x to y.
    Map(OrbitArgs),
}

#[derive(Subcommand, Debug)]
pub enum MonCmd {
    Check {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        isometry: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ScenarioCmd {
    /// Traces of g(δ) for supplied or sampled isometries of kummer(n).
    KummerProof {
        #[arg(long)]
        n: u32,
        #[arg(long, conflicts_with = "sample")]
        isometry: Option<PathBuf>,
        /// Number of sampled isometries (seeded by --seed, default 0).
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Orientation-preserving isometry moving the embedded wall divisor to F.
    Og10 {
        #[arg(long, requires = "embedding")]
        fixture: Option<PathBuf>,
        #[arg(long, requires = "fixture")]
        embedding: Option<PathBuf>,
        #[arg(long = "F")]
        f: Option<PathBuf>,
    },
}

/// Result of a command: a JSON value, a text rendering and an exit code.
pub struct Outcome {
    pub result: serde_json::Value,
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
