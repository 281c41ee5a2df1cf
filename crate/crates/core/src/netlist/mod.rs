//! Circuit data model for MS-gate netlists.
//!
//! Gates are stored in execution order: the first gate in the list acts on
//! the input state first, so the circuit matrix is `G_last * ... * G_1`.
//! Line 0 is the most significant index of the Kronecker ordering.

mod expand;
mod io;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exponent::RationalExponent;
use crate::linalg::ComplexMatrix;

pub use expand::expand_mcx;
pub use io::{deserialize, serialize};
pub use validate::{validate, Diagnostic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateBase {
    /// Rational power of the circuit's bound `Q`.
    Q,
    /// Cyclic shift.
    X,
    /// Involutive negation.
    N,
    /// Rational power of a matrix carried by the gate itself.
    #[serde(rename = "EXPLICIT")]
    Explicit,
}

/// The unitary an MS gate applies to its target line.
#[derive(Clone, Debug, PartialEq)]
pub struct GateUnitary {
    pub base: GateBase,
    pub exponent: RationalExponent,
    pub explicit: Option<ComplexMatrix>,
}

impl GateUnitary {
    pub fn q(exponent: RationalExponent) -> Self {
        Self {
            base: GateBase::Q,
            exponent,
            explicit: None,
        }
    }

    pub fn shift() -> Self {
        Self {
            base: GateBase::X,
            exponent: RationalExponent::ONE,
            explicit: None,
        }
    }

    pub fn negation() -> Self {
        Self {
            base: GateBase::N,
            exponent: RationalExponent::ONE,
            explicit: None,
        }
    }

    pub fn explicit(matrix: ComplexMatrix, exponent: RationalExponent) -> Self {
        Self {
            base: GateBase::Explicit,
            exponent,
            explicit: Some(matrix),
        }
    }

    /// True for integer powers of the shift or negation, which map basis
    /// states to basis states.
    pub fn is_permutation(&self) -> bool {
        matches!(self.base, GateBase::X | GateBase::N) && self.exponent.is_integer()
    }
}

impl fmt::Display for GateUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.base {
            GateBase::Q => "Q",
            GateBase::X => "X",
            GateBase::N => "N",
            GateBase::Explicit => "U",
        };
        if self.exponent.is_one() {
            write!(f, "{name}")
        } else {
            write!(f, "{name}^({})", self.exponent)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    /// Single-control Muthukrishnan-Stroud gate.
    Ms,
    /// Multi-controlled shift pseudo-gate, lowered by [`expand_mcx`].
    Mcx,
}

/// One gate of a netlist. Active iff every control line reads `|p-1>`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<usize>,
    pub target: usize,
    /// `None` for MCX, which always applies one step of `X`.
    pub unitary: Option<GateUnitary>,
}

impl Gate {
    pub fn ms(control: usize, target: usize, unitary: GateUnitary) -> Self {
        Self {
            kind: GateKind::Ms,
            controls: vec![control],
            target,
            unitary: Some(unitary),
        }
    }

    /// Controlled `X` on a control line, used to walk another control through
    /// all p levels.
    pub fn shift(control: usize, target: usize) -> Self {
        Self::ms(control, target, GateUnitary::shift())
    }

    pub fn mcx(controls: Vec<usize>, target: usize) -> Self {
        Self {
            kind: GateKind::Mcx,
            controls,
            target,
            unitary: None,
        }
    }

    /// The unitary applied when active; MCX resolves to `X`.
    pub fn effective_unitary(&self) -> GateUnitary {
        self.unitary.clone().unwrap_or_else(GateUnitary::shift)
    }

    pub fn is_mcx(&self) -> bool {
        self.kind == GateKind::Mcx
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctl = self
            .controls
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match self.kind {
            GateKind::Ms => write!(
                f,
                "C[{ctl}]({} on {})",
                self.effective_unitary(),
                self.target
            ),
            GateKind::Mcx => write!(f, "MCX[{ctl}](X on {})", self.target),
        }
    }
}

/// An MS netlist over `num_lines` p-level lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub p: u32,
    pub num_lines: usize,
    pub target_line: usize,
    pub gates: Vec<Gate>,
    /// The `Q` whose powers the `Q`-based gates resolve against.
    pub q_binding: Option<ComplexMatrix>,
    pub mode_tag: Option<String>,
}

impl Circuit {
    pub fn new(p: u32, num_lines: usize, target_line: usize) -> Self {
        Self {
            p,
            num_lines,
            target_line,
            gates: Vec::new(),
            q_binding: None,
            mode_tag: None,
        }
    }

    pub fn with_q(mut self, q: ComplexMatrix) -> Self {
        self.q_binding = Some(q);
        self
    }

    pub fn with_mode_tag(mut self, tag: impl Into<String>) -> Self {
        self.mode_tag = Some(tag.into());
        self
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn mcx_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_mcx()).count()
    }

    /// Indices of the control lines: every line except the target.
    pub fn control_lines(&self) -> Vec<usize> {
        (0..self.num_lines)
            .filter(|&l| l != self.target_line)
            .collect()
    }

    /// Matrix dimension `p^num_lines`.
    pub fn dim(&self) -> usize {
        (self.p as usize).pow(self.num_lines as u32)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "circuit p={} lines={} target={} gates={}{}",
            self.p,
            self.num_lines,
            self.target_line,
            self.gates.len(),
            self.mode_tag
                .as_deref()
                .map(|t| format!(" mode={t}"))
                .unwrap_or_default()
        )?;
        for (i, g) in self.gates.iter().enumerate() {
            writeln!(f, "  {i:4}: {g}")?;
        }
        Ok(())
    }
}
