use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qupit",
    version,
    about = "Synthesis and verification of p-valued Toffoli and Deutsch gates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a circuit for one mode and write it as JSON.
    Synth(SynthArgs),
    /// Check a circuit file against its controlled-Q oracle.
    Verify(VerifyArgs),
    /// Gate-count table over a range of p.
    Table(TableArgs),
    /// Verify every mode and class over a range of p.
    CheckModes(CheckModesArgs),
    /// Write the brute-force controlled-Q matrix for a mode.
    Oracle(OracleArgs),
    /// Write a rational power of a unitary.
    Root(RootArgs),
    /// Compare the MCX-driven and cascaded shift blocks.
    DemoCascade(DemoArgs),
}

#[derive(Debug, Args)]
pub struct QArgs {
    /// builtin:N | builtin:X | builtin:Z | file:<path> | random
    #[arg(long = "q", default_value = "random")]
    pub source: String,
    /// Seed for `random` Q sources.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    #[arg(long, value_parser = parse_p)]
    pub p: u32,
    #[arg(long, default_value_t = 3)]
    pub controls: usize,
    /// Short (`conj`, `disjmixed_a`, `case4`) or full (`deutsch2_xdisj`) mode name.
    #[arg(long)]
    pub mode: String,
    /// Toffoli class: Q must be self-inverse.
    #[arg(long)]
    pub toffoli_class: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub q: QArgs,
    /// Lower MCX pseudo-gates to MS gates.
    #[arg(long)]
    pub expand: bool,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Circuit JSON file.
    pub circuit: PathBuf,
    /// Expected mode; defaults to the circuit's mode tag.
    #[arg(long)]
    pub mode: Option<String>,
    /// Check the Toffoli-class exponent table instead of the Deutsch one.
    #[arg(long)]
    pub toffoli_class: bool,
    #[arg(long)]
    pub tol: Option<f64>,
    /// JSON report file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Odd p values: `5`, `3:7` or `3,5,11`.
    #[arg(long, value_parser = parse_p_range)]
    pub p: PRange,
    /// Restrict to one mode (full name).
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub toffoli_class: bool,
    /// Conjunctive two- versus three-control growth instead of the mode table.
    #[arg(long)]
    pub growth: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckModesArgs {
    #[arg(long, value_parser = parse_p_range)]
    pub p: PRange,
    /// Seed of the random Deutsch-class unitaries.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Random unitaries per Deutsch-class mode.
    #[arg(long, default_value_t = 3)]
    pub unitaries: usize,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub q: QArgs,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RootArgs {
    #[arg(long, value_parser = parse_p)]
    pub p: u32,
    #[command(flatten)]
    pub q: QArgs,
    /// Exponent `n` or `n/d`.
    #[arg(long, allow_hyphen_values = true)]
    pub exp: String,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long, value_parser = parse_p)]
    pub p: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PRange(pub Vec<u32>);

fn parse_p(s: &str) -> Result<u32, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

pub fn parse_p_range(s: &str) -> Result<PRange, String> {
    p_range(s).map_err(|e| format!("{e:#}"))
}

fn p_range(s: &str) -> anyhow::Result<PRange> {
    let num = |t: &str| -> anyhow::Result<u32> {
        t.trim()
            .parse()
            .with_context(|| format!("`{t}` is not a number"))
    };
    let ps: Vec<u32> = if let Some((lo, hi)) = s.split_once(':') {
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            bail!("empty range {lo}:{hi}");
        }
        if lo % 2 == 0 {
            bail!("range must start at an odd p, got {lo}");
        }
        (lo..=hi).step_by(2).collect()
    } else {
        s.split(',').map(num).collect::<anyhow::Result<_>>()?
    };
    if ps.is_empty() {
        bail!("no p values");
    }
    Ok(PRange(ps))
}
