//! Synthesis and verification of p-valued quantum Toffoli and Deutsch gates.
//!
//! Every composite gate is lowered to Muthukrishnan-Stroud (MS) primitives:
//! two-line gates that apply a unitary to their target iff the single control
//! line is in basis state `|p-1>`. The crate covers two and three control
//! lines under conjunctive, disjunctive and mixed-polarity control, checks
//! the resulting netlists by dense simulation against a brute-force
//! controlled-unitary oracle, and checks the block exponent tables exactly
//! with rational arithmetic.
//!
//! Module map:
//!
//! * [`linalg`]: dense complex matrices, the standard p-valued gate matrices
//!   and branch-consistent rational powers of unitaries.
//! * [`netlist`]: the circuit data model, JSON file format, validation and
//!   lowering of multi-controlled X pseudo-gates.
//! * [`synth`]: gate modes, block exponent tables and circuit construction.
//! * [`verify`]: simulation, oracle, exact exponent checks, cascade demo.
//! * [`cost`]: gate counting and closed-form cost formulas.

pub mod cost;
mod error;
pub mod exponent;
pub mod linalg;
pub mod netlist;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
pub use exponent::RationalExponent;
pub use linalg::{c64, ComplexMatrix, SpectralForm};
pub use netlist::{Circuit, Gate, GateBase, GateKind, GateUnitary};
pub use synth::{ActivationMask, BlockAssignment, BlockLabel, GateClass, GateMode, ModeName};
pub use verify::VerificationReport;

/// Tolerance used when admitting a matrix as unitary.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance for numerical equality claims between matrices.
pub const EQUALITY_TOL: f64 = 1e-9;
/// Entrywise tolerance for circuit-versus-oracle comparison.
pub const VERIFY_TOL: f64 = 1e-8;
