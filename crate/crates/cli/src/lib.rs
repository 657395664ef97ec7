//! Command-line front end: reads a corpus file, runs one computation (or all
//! of them) over its instances, prints a table and optionally writes a JSON
//! certificate.
//!
//! Exit status: 0 when every check passes, 1 for invalid input, 2 when a
//! check fails.

pub mod commands;
pub mod corpus;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub use commands::{CliError, Command, Context};
pub use corpus::{Corpus, CorpusError};
pub use report::{Certificate, CommandRun, InstanceReport, Options};

use nori_core::linalg::Ring;

/// The corpus shipped with the tool.
pub const BUNDLED_CORPUS: &str = include_str!("../corpus/nori.toml");

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Z,
    Q,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Z => Ring::Z,
            RingArg::Q => Ring::Q,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nori",
    version,
    about = "Exact homology, filtrations and diagram coalgebras with certificates"
)]
pub struct Cli {
    pub command: Command,
    /// Run on this instance only.
    pub instance: Option<String>,
    /// Corpus file; the bundled corpus when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Coefficients; defaults to z for topology and comodules, q for diagram algebra.
    #[arg(long, value_enum)]
    pub ring: Option<RingArg>,
    /// Write the JSON certificate here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Candidate budget for very-good-search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Number of steps for sigma-system; the whole chain when absent.
    #[arg(long)]
    pub depth: Option<usize>,
}

/// Runs one invocation against already parsed corpus text.
pub fn certify(cli: &Cli, corpus: &Corpus) -> Result<Certificate, CliError> {
    let ctx = Context::new(corpus, cli.ring.map(Ring::from), cli.budget, cli.depth);
    let runs = ctx.run(cli.command, cli.instance.as_deref())?;
    Ok(Certificate {
        tool: "nori".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cli.command.name(),
        input_sha256: corpus.digest.clone(),
        options: Options {
            instance: cli.instance.clone(),
            budget: cli.budget,
            depth: cli.depth,
        },
        passed: runs.iter().all(|r| r.passed),
        runs,
    })
}

/// Full invocation; returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let corpus = match &cli.corpus {
        Some(p) => Corpus::from_path(p),
        None => Corpus::parse(BUNDLED_CORPUS),
    };
    let corpus = match corpus {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let cert = match certify(cli, &corpus) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    print!("{}", cert.to_table());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, cert.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 1;
        }
    }
    if cert.passed {
        0
    } else {
        2
    }
}
