use thiserror::Error;

use crate::netlist::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be odd ≥ 3, got {0}")]
    InvalidP(u32),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not self-inverse (residual {residual:.3e})")]
    NotSelfInverse { residual: f64 },

    #[error("eigen-solver failed: {0}")]
    ConvergenceFailure(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("circuit invariant violated: {}", format_diagnostics(.0))]
    InvariantViolation(Vec<Diagnostic>),

    #[error("multi-controlled X with {0} controls is not supported (2 or 3 only)")]
    UnsupportedArity(usize),

    #[error("circuit uses Q but has no bound Q matrix")]
    UnboundQ,

    #[error("unknown gate mode `{0}`")]
    UnknownMode(String),

    #[error("{0}")]
    ModeMismatch(String),

    #[error("row {row} sums to {sum}, which is not a valid activation residual")]
    NonBooleanResidual { row: usize, sum: String },
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
