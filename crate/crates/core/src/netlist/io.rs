//! JSON circuit files.
//!
//! ```json
//! {"p": 5, "num_lines": 4, "target_line": 3, "mode_tag": "conj3",
//!  "gates": [{"kind": "ms", "controls": [0], "target": 3, "base": "Q", "exp": [1, 25]},
//!            {"kind": "mcx", "controls": [0, 1], "target": 2}],
//!  "q": {"dim": 5, "entries": [[1.0, 0.0], ...]}}
//! ```

use serde::{Deserialize, Serialize};

use super::{validate, Circuit, Gate, GateBase, GateKind, GateUnitary};
use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::linalg::ComplexMatrix;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    kind: GateKind,
    controls: Vec<usize>,
    target: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<GateBase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exp: Option<RationalExponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<ComplexMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    p: u32,
    num_lines: usize,
    target_line: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode_tag: Option<String>,
    gates: Vec<GateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<ComplexMatrix>,
}

pub fn serialize(c: &Circuit) -> String {
    let doc = CircuitDoc {
        p: c.p,
        num_lines: c.num_lines,
        target_line: c.target_line,
        mode_tag: c.mode_tag.clone(),
        gates: c
            .gates
            .iter()
            .map(|g| GateDoc {
                kind: g.kind,
                controls: g.controls.clone(),
                target: g.target,
                base: g.unitary.as_ref().map(|u| u.base),
                exp: g.unitary.as_ref().map(|u| u.exponent),
                matrix: g.unitary.as_ref().and_then(|u| u.explicit.clone()),
            })
            .collect(),
        q: c.q_binding.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("circuit serialization cannot fail")
}

/// Parses and validates a circuit document.
pub fn deserialize(text: &str) -> Result<Circuit> {
    let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let field_error = |index: usize, message: String| Error::Parse {
        line: 0,
        column: 0,
        message: format!("gates[{index}]: {message}"),
    };

    let mut gates = Vec::with_capacity(doc.gates.len());
    for (i, g) in doc.gates.into_iter().enumerate() {
        let unitary = match g.kind {
            GateKind::Mcx => {
                if g.base.is_some() || g.exp.is_some() || g.matrix.is_some() {
                    return Err(field_error(
                        i,
                        "mcx gates take no `base`, `exp` or `matrix`".into(),
                    ));
                }
                None
            }
            GateKind::Ms => {
                let base = g
                    .base
                    .ok_or_else(|| field_error(i, "ms gate is missing `base`".into()))?;
                let exponent = g
                    .exp
                    .ok_or_else(|| field_error(i, "ms gate is missing `exp`".into()))?;
                Some(GateUnitary {
                    base,
                    exponent,
                    explicit: g.matrix,
                })
            }
        };
        gates.push(Gate {
            kind: g.kind,
            controls: g.controls,
            target: g.target,
            unitary,
        });
    }

    let circuit = Circuit {
        p: doc.p,
        num_lines: doc.num_lines,
        target_line: doc.target_line,
        gates,
        q_binding: doc.q,
        mode_tag: doc.mode_tag,
    };
    let diagnostics = validate(&circuit);
    if diagnostics.is_empty() {
        Ok(circuit)
    } else {
        Err(Error::InvariantViolation(diagnostics))
    }
}
