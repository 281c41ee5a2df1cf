use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{Circuit, GateBase, GateKind};
use crate::UNITARY_TOL;

/// A single invariant violation. `gate` is the offending gate index, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub gate: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    fn circuit(message: impl Into<String>) -> Self {
        Self {
            gate: None,
            message: message.into(),
        }
    }

    fn gate(index: usize, message: impl Into<String>) -> Self {
        Self {
            gate: Some(index),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate {
            Some(i) => write!(f, "gate {i}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Checks every structural invariant; an empty result means the circuit is valid.
pub fn validate(c: &Circuit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if c.p < 3 || c.p.is_multiple_of(2) {
        out.push(Diagnostic::circuit(format!(
            "p must be odd and >= 3, got {}",
            c.p
        )));
    }
    if c.num_lines < 2 {
        out.push(Diagnostic::circuit(format!(
            "num_lines must be >= 2, got {}",
            c.num_lines
        )));
    }
    if c.target_line >= c.num_lines {
        out.push(Diagnostic::circuit(format!(
            "target_line {} out of range for {} lines",
            c.target_line, c.num_lines
        )));
    }
    if let Some(q) = &c.q_binding {
        if q.dim() != c.p as usize {
            out.push(Diagnostic::circuit(format!(
                "bound Q has dimension {}, expected {}",
                q.dim(),
                c.p
            )));
        } else if !q.is_unitary(UNITARY_TOL) {
            out.push(Diagnostic::circuit(format!(
                "bound Q is not unitary (residual {:.3e})",
                q.unitarity_residual()
            )));
        }
    }

    for (i, g) in c.gates.iter().enumerate() {
        match g.kind {
            GateKind::Ms if g.controls.len() != 1 => out.push(Diagnostic::gate(
                i,
                format!(
                    "MS gate must have exactly 1 control, has {}",
                    g.controls.len()
                ),
            )),
            GateKind::Mcx if g.controls.len() < 2 => out.push(Diagnostic::gate(
                i,
                format!(
                    "MCX gate needs at least 2 controls, has {}",
                    g.controls.len()
                ),
            )),
            _ => {}
        }
        let mut seen = HashSet::new();
        if g.controls.iter().any(|c| !seen.insert(*c)) {
            out.push(Diagnostic::gate(i, "duplicate control lines"));
        }
        if g.controls.contains(&g.target) {
            out.push(Diagnostic::gate(
                i,
                format!("target {} is also a control", g.target),
            ));
        }
        if let Some(&bad) = g
            .controls
            .iter()
            .chain(std::iter::once(&g.target))
            .find(|&&l| l >= c.num_lines)
        {
            out.push(Diagnostic::gate(
                i,
                format!("line {bad} out of range for {} lines", c.num_lines),
            ));
        }

        match (&g.kind, &g.unitary) {
            (GateKind::Ms, None) => out.push(Diagnostic::gate(i, "MS gate without a unitary")),
            (GateKind::Mcx, Some(_)) => {
                out.push(Diagnostic::gate(i, "MCX gate must not carry a unitary"))
            }
            (GateKind::Ms, Some(u)) => match u.base {
                GateBase::X | GateBase::N if !u.exponent.is_integer() => out.push(
                    Diagnostic::gate(i, format!("{:?} gates take integer exponents only", u.base)),
                ),
                GateBase::Explicit => match &u.explicit {
                    None => out.push(Diagnostic::gate(i, "EXPLICIT gate without a matrix")),
                    Some(m) if m.dim() != c.p as usize => out.push(Diagnostic::gate(
                        i,
                        format!(
                            "explicit matrix has dimension {}, expected {}",
                            m.dim(),
                            c.p
                        ),
                    )),
                    Some(m) if !m.is_unitary(UNITARY_TOL) => {
                        out.push(Diagnostic::gate(i, "explicit matrix is not unitary"))
                    }
                    Some(_) => {}
                },
                GateBase::Q if c.q_binding.is_none() => {
                    out.push(Diagnostic::gate(i, "Q gate but the circuit has no bound Q"))
                }
                _ if u.explicit.is_some() => out.push(Diagnostic::gate(
                    i,
                    "only EXPLICIT gates may carry a matrix",
                )),
                _ => {}
            },
            (GateKind::Mcx, None) => {}
        }
    }
    out
}
