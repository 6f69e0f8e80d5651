//! `seifert-calc`: exact invariants of star-shaped resolution graphs from the
//! command line.
//!
//! Every command builds an ordered [`Document`] and renders it either as
//! `key: value` text or as JSON. Rationals are always `p/q` strings.

mod commands;
mod enumerate;
mod render;

use std::fmt;
use std::io::{self, Read};

use clap::{Parser, Subcommand, ValueEnum};
use seifert_core::StarGraph;

pub use render::{render_json, render_text, Document};

pub const VERIFY_ENV: &str = "SEIFERT_CALC_VERIFY";

#[derive(Debug, Parser)]
#[command(name = "seifert-calc", version, about = "Exact invariants of star-shaped resolution graphs")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Force independent cross-checks on (also SEIFERT_CALC_VERIFY=1).
    #[arg(long, global = true)]
    pub verify: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// e, chi, chi/e, alpha, order of K, discriminant group, |det|.
    Invariants { graph: Option<String> },
    /// Coefficient of the canonical cycle on every curve.
    CanonicalCycle { graph: Option<String> },
    /// Log-terminal / log-canonical class, chi/e < 1 criteria and certificate.
    Classify { graph: Option<String> },
    /// dim A_k for 0 <= k <= kmax (rational central curve only).
    Poincare {
        graph: Option<String>,
        #[arg(long, default_value_t = 20)]
        kmax: u64,
    },
    /// Gorenstein test and order of K_X.
    Gorenstein { graph: Option<String> },
    /// Genus-0 graphs within bounds, arms sorted by (n, q).
    #[command(allow_negative_numbers = true)]
    Enumerate {
        /// Arm count: `3`, `3..5`, `3..=5` or `3-5`.
        #[arg(long, default_value = "3")]
        t: String,
        #[arg(long)]
        dmax: i64,
        #[arg(long)]
        nmax: i64,
        #[arg(long, value_enum)]
        filter: Option<Filter>,
    },
    /// Hirzebruch-Jung continued fraction of n/q.
    Cf { fraction: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    #[value(name = "lemma24")]
    Lemma24,
    #[value(name = "chi_e_lt_1")]
    ChiELt1,
    #[value(name = "alpha_gt_minus2")]
    AlphaGtMinus2,
    #[value(name = "log_canonical")]
    LogCanonical,
}

impl Filter {
    pub fn as_str(self) -> &'static str {
        match self {
            Filter::Lemma24 => "lemma24",
            Filter::ChiELt1 => "chi_e_lt_1",
            Filter::AlphaGtMinus2 => "alpha_gt_minus2",
            Filter::LogCanonical => "log_canonical",
        }
    }
}

/// A failed run: exit code 1 for a consistency failure, 2 for bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<seifert_core::Error> for Failure {
    fn from(e: seifert_core::Error) -> Self {
        Failure {
            code: if e.is_consistency() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Where a missing positional graph comes from.
pub trait Input {
    fn read_all(&mut self) -> io::Result<String>;
}

impl<R: Read> Input for R {
    fn read_all(&mut self) -> io::Result<String> {
        let mut s = String::new();
        self.read_to_string(&mut s)?;
        Ok(s)
    }
}

pub fn verify_from_env() -> bool {
    std::env::var(VERIFY_ENV).is_ok_and(|v| v.trim() == "1")
}

fn load_graph(arg: &Option<String>, input: &mut dyn Input) -> Result<StarGraph, Failure> {
    let text = match arg.as_deref() {
        Some(s) if s != "-" => s.to_string(),
        _ => input
            .read_all()
            .map_err(|e| Failure::input(format!("reading stdin: {e}")))?,
    };
    let sg = StarGraph::parse(&text)?;
    sg.require_valid()?;
    Ok(sg)
}

/// Runs one command and returns the rendered output.
pub fn run(cli: &Cli, input: &mut dyn Input, verify_env: bool) -> Result<String, Failure> {
    let verify = cli.verify || verify_env;
    let doc = match &cli.command {
        Command::Invariants { graph } => commands::invariants(&load_graph(graph, input)?, verify)?,
        Command::CanonicalCycle { graph } => {
            commands::canonical_cycle(&load_graph(graph, input)?, verify)?
        }
        Command::Classify { graph } => commands::classify(&load_graph(graph, input)?, verify)?,
        Command::Poincare { graph, kmax } => {
            commands::poincare(&load_graph(graph, input)?, *kmax, verify)?
        }
        Command::Gorenstein { graph } => commands::gorenstein(&load_graph(graph, input)?, verify)?,
        Command::Enumerate {
            t,
            dmax,
            nmax,
            filter,
        } => enumerate::enumerate(&enumerate::Bounds::parse(t, *dmax, *nmax)?, *filter)?,
        Command::Cf { fraction } => {
            let (doc, expansion) = commands::cf(fraction)?;
            if !cli.json {
                return Ok(format!("{expansion}\n"));
            }
            doc
        }
    };
    Ok(if cli.json {
        render_json(&doc)
    } else {
        render_text(&doc)
    })
}
