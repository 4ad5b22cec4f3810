//! `cfclab`: generate trees, build and check colorings, run the exact
//! solvers and sweep random trees.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 coloring invalid,
//! 3 search budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cfclab", version, about = "Conflict-free connection colorings of trees")]
pub struct Cli {
    /// Output format. `decompose` and `exact` default to json, the rest to
    /// text.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct Budget {
    /// Node limit per exact search.
    #[arg(long, env = "CFCLAB_BUDGET", default_value_t = cfclab::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a family tree as an edge list.
    Gen {
        /// path, star, double_star, binomial, complete_binary, Q, R, A or random
        family: String,
        /// Family parameters (two for double_star, otherwise one).
        params: Vec<usize>,
        /// Seed for random trees.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the family's certificate coloring, to PATH or after the
        /// edge list when no path is given.
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        certificate: Option<String>,
        /// Write edges as sorted `(min, max)` pairs.
        #[arg(long)]
        canonical: bool,
    },
    /// Check a coloring. Reads the coloring from --coloring or from the
    /// section following the edge list.
    Verify {
        /// Edge-list file (default: standard input).
        tree: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Cfc)]
        mode: Mode,
    },
    /// Balanced-edge decomposition and its coloring.
    Decompose {
        tree: Option<PathBuf>,
        /// Pick tied balanced edges at random from this seed instead of
        /// lowest index.
        #[arg(long)]
        seed: Option<u64>,
        /// Use the choice sequence that minimizes the depth.
        #[arg(long, conflicts_with = "seed")]
        min: bool,
    },
    /// Exact solvers.
    Exact {
        #[arg(value_enum)]
        quantity: Quantity,
        tree: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Whether the tree is cfc-critical.
    Critical {
        tree: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Cut-edge bounds on cfc for a connected graph.
    Bounds {
        graph: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Measure D(T) against cfc(T) over random trees or a family.
    Sweep {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sweep a one-parameter family over k-min..=k-max instead.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        /// Largest tree the sweep accepts.
        #[arg(long, env = "CFCLAB_MAX_N", default_value_t = cfclab::sweep::DEFAULT_MAX_N)]
        max_n: usize,
        /// JSON-lines report path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Cfc,
    Odd,
    Ranking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Cfc,
    Rank,
    Oc,
    Critical,
    Bounds,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cfclab: {e}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
