use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::export::Format;

#[derive(Debug, Parser)]
#[command(name = "dcsim", version, about = "Delayed choice experiment simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Wheeler,
    Eraser,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose both orderings of an experiment and compare them.
    Verify {
        target: VerifyTarget,
        /// Number of discrete angles (eraser only).
        #[arg(long)]
        n: Option<usize>,
        /// Flat key = value config file (eraser only).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Largest tolerated entrywise difference.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Sample seeded runs and write events, histograms and a manifest.
    Run {
        /// wheeler1..3 or eraser1..3.
        #[arg(required_unless_present = "manifest")]
        experiment: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        runs: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Output directory, created if missing.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        /// Replay a previous run's manifest into `--out`.
        #[arg(long, conflicts_with_all = ["experiment", "config", "n"])]
        manifest: Option<PathBuf>,
    },
    /// Write the exact joint (bin, detector) distribution and plot curves.
    Analytic {
        /// eraser1..3.
        experiment: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
    },
}
