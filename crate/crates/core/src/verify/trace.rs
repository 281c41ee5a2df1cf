//! Exact, symbolic checks: block exponent sums per control class, and
//! classical tracing of control-line basis states through a netlist.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::linalg::make_not;
use crate::netlist::{Circuit, GateBase};
use crate::synth::{describe_pattern, ActivationMask, BlockAssignment, GateClass, TABLE4_PATTERNS};

/// How many times each block applies its gate to the target, per control
/// class pattern. Rows are `(pattern, multiplicities)`; for three controls
/// they follow the abstract behavior table order, columns A..G.
pub fn multiplicities(n_controls: usize, p: u32) -> Result<Vec<(u8, Vec<i64>)>> {
    let q = p as i64 - 1;
    match n_controls {
        // Columns G1, G2, G3; bit 1 = alpha, bit 0 = beta.
        2 => Ok(vec![
            (0b00, vec![0, 0, 0]),
            (0b01, vec![0, 1, q]),
            (0b10, vec![1, 0, 1]),
            (0b11, vec![1, 1, 0]),
        ]),
        3 => {
            let rows: [[i64; 7]; 8] = [
                [0, 0, 0, 0, 0, 0, 0],
                [0, 0, 1, 0, q, q, q],
                [0, 1, 0, q, 0, 1, 0],
                [1, 0, 0, 1, 1, 0, 0],
                [0, 1, 1, q, q, 0, q],
                [1, 0, 1, 1, 0, q, q],
                [1, 1, 0, 0, 1, 1, 1],
                [1, 1, 1, 0, 0, 0, 0],
            ];
            Ok(TABLE4_PATTERNS
                .iter()
                .zip(rows)
                .map(|(&pat, r)| (pat, r.to_vec()))
                .collect())
        }
        n => Err(Error::UnsupportedArity(n)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowCheck {
    pub row: usize,
    pub pattern: String,
    pub sum: RationalExponent,
    pub active: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentCheck {
    pub class: GateClass,
    pub rows: Vec<RowCheck>,
    pub observed: ActivationMask,
}

/// Sums the block exponents of each row with exact rationals.
///
/// Deutsch class: every row must sum to exactly 0 or 1. Toffoli class: every
/// row must be an integer and the row is active iff it is odd.
pub fn exponent_check(assignment: &BlockAssignment, p: u32) -> Result<ExponentCheck> {
    let n = assignment.n_controls();
    let exps = assignment.exponents();
    let mut observed = ActivationMask::empty(n);
    let mut rows = Vec::new();
    for (row, (pattern, mult)) in multiplicities(n, p)?.into_iter().enumerate() {
        let sum: RationalExponent = mult.iter().zip(&exps).map(|(&m, &e)| e * m).sum();
        let active = match assignment.class {
            GateClass::Deutsch if sum.is_zero() => false,
            GateClass::Deutsch if sum.is_one() => true,
            GateClass::Toffoli if sum.is_integer() => sum.parity() == Some(1),
            _ => {
                return Err(Error::NonBooleanResidual {
                    row,
                    sum: sum.to_string(),
                })
            }
        };
        if active {
            observed.insert(pattern);
        }
        rows.push(RowCheck {
            row,
            pattern: describe_pattern(pattern, n),
            sum,
            active,
        });
    }
    Ok(ExponentCheck {
        class: assignment.class,
        rows,
        observed,
    })
}

/// Result of pushing one control basis tuple through a netlist.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathTrace {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    /// Total exponent of `Q` applied to the target.
    pub exponent: RationalExponent,
}

impl PathTrace {
    pub fn restored(&self) -> bool {
        self.input == self.output
    }
}

/// Traces a control basis tuple classically. Returns `None` when some gate
/// cannot be tracked symbolically (a non-permutation on a control line, or a
/// target gate that is not a power of the bound `Q`).
pub fn trace_path(c: &Circuit, input: &[usize]) -> Option<PathTrace> {
    let controls = c.control_lines();
    assert_eq!(input.len(), controls.len());
    let p = c.p as usize;
    let mut state = vec![0usize; c.num_lines];
    for (&line, &v) in controls.iter().zip(input) {
        state[line] = v;
    }
    let not_is_q = c
        .q_binding
        .as_ref()
        .is_some_and(|q| make_not(c.p).is_ok_and(|n| *q == n));
    let mut exponent = RationalExponent::ZERO;
    for g in &c.gates {
        if g.controls.iter().any(|&l| state[l] != p - 1) {
            continue;
        }
        let u = g.effective_unitary();
        if g.target == c.target_line {
            match u.base {
                GateBase::Q => exponent = exponent + u.exponent,
                GateBase::N if not_is_q => exponent = exponent + u.exponent,
                _ => return None,
            }
        } else {
            if !u.exponent.is_integer() {
                return None;
            }
            let k = u.exponent.numer();
            let v = &mut state[g.target];
            match u.base {
                GateBase::X => *v = (*v as i64 + k).rem_euclid(p as i64) as usize,
                GateBase::N => {
                    if k.rem_euclid(2) == 1 {
                        *v = p - 1 - *v;
                    }
                }
                _ => return None,
            }
        }
    }
    Some(PathTrace {
        input: input.to_vec(),
        output: controls.iter().map(|&l| state[l]).collect(),
        exponent,
    })
}

/// Per-pattern exponent sums obtained by tracing every control basis tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowResidual {
    pub pattern: String,
    /// `None` when tuples in the same class disagree.
    pub sum: Option<RationalExponent>,
    pub restored: bool,
}

/// Traces all `p^n` control tuples; `None` if the circuit is not traceable.
pub fn row_residuals(c: &Circuit) -> Option<Vec<RowResidual>> {
    let n = c.num_lines - 1;
    let p = c.p as usize;
    let mut sums: Vec<Option<Option<RationalExponent>>> = vec![None; 1 << n];
    let mut restored = vec![true; 1 << n];
    let mut values = vec![0usize; n];
    for idx in 0..p.pow(n as u32) {
        let mut rest = idx;
        for v in values.iter_mut().rev() {
            *v = rest % p;
            rest /= p;
        }
        let t = trace_path(c, &values)?;
        let pat = ActivationMask::pattern_of(&values, c.p) as usize;
        restored[pat] &= t.restored();
        sums[pat] = match sums[pat] {
            None => Some(Some(t.exponent)),
            Some(Some(e)) if e == t.exponent => Some(Some(e)),
            Some(_) => Some(None),
        };
    }
    Some(
        (0..1u8 << n)
            .map(|pat| RowResidual {
                pattern: describe_pattern(pat, n),
                sum: sums[pat as usize].flatten(),
                restored: restored[pat as usize],
            })
            .collect(),
    )
}
