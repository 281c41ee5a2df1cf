//! Numerical and exact verification of synthesized netlists.

mod cascade;
mod oracle;
mod simulate;
mod trace;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::netlist::{expand_mcx, Circuit};
use crate::synth::{describe_pattern, synthesize, ActivationMask, GateMode, ModeName};

pub use cascade::{cascaded_block, demo_cascade, mcx_block, CascadeDemo, CascadeRow};
pub use oracle::{oracle, oracle_on};
pub use simulate::{embed_gate, simulate};
pub use trace::{
    exponent_check, multiplicities, row_residuals, trace_path, ExponentCheck, PathTrace, RowCheck,
    RowResidual,
};

/// Outcome of comparing a circuit with the controlled-`Q` oracle.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub mode: Option<String>,
    pub p: u32,
    pub gate_count: usize,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub mask_expected: ActivationMask,
    /// Patterns on which every control tuple sees `Q` on the target.
    pub mask_observed: ActivationMask,
    /// Patterns whose tuples see neither `Q` nor `I` uniformly.
    pub inconsistent_patterns: Vec<String>,
    /// Exact per-class exponent sums, when the circuit can be traced.
    pub row_residuals: Option<Vec<RowResidual>>,
}

/// Simulates `c` and compares it entrywise with the oracle for `expected`.
///
/// Verification failures are reported in the result; errors are reserved
/// for circuits that cannot be simulated.
pub fn verify_circuit(
    c: &Circuit,
    expected: &ActivationMask,
    tol: f64,
) -> Result<VerificationReport> {
    let q = c.q_binding.as_ref().ok_or(Error::UnboundQ)?;
    let n = c.num_lines - 1;
    if expected.n_controls() != n {
        return Err(Error::ModeMismatch(format!(
            "mask has {} controls, circuit has {n}",
            expected.n_controls()
        )));
    }
    let m = simulate(c)?;
    let reference = oracle_on(c.p, c.num_lines, c.target_line, q, expected);
    let max_abs_deviation = m.max_abs_diff(&reference)?;
    let (mask_observed, inconsistent) = observe_mask(c, &m, q, tol);
    let pass = max_abs_deviation <= tol && mask_observed == *expected && inconsistent.is_empty();
    Ok(VerificationReport {
        mode: c.mode_tag.clone(),
        p: c.p,
        gate_count: c.len(),
        max_abs_deviation,
        tolerance: tol,
        pass,
        mask_expected: expected.clone(),
        mask_observed,
        inconsistent_patterns: inconsistent
            .into_iter()
            .map(|pat| describe_pattern(pat, n))
            .collect(),
        row_residuals: row_residuals(c),
    })
}

/// Synthesizes `mode`, optionally lowers MCX gates, and verifies it against
/// the mode's activation mask.
pub fn verify_mode(
    p: u32,
    q: &ComplexMatrix,
    mode: ModeName,
    toffoli_class: bool,
    expand: bool,
    tol: f64,
) -> Result<VerificationReport> {
    let s = synthesize(p, q, mode, toffoli_class)?;
    let c = if expand {
        expand_mcx(&s.circuit)?
    } else {
        s.circuit
    };
    verify_circuit(&c, &GateMode::new(mode).mask, tol)
}

enum Seen {
    Active,
    Idle,
    Other,
}

/// Classifies each control tuple by the block the circuit applies to the
/// target, then merges tuples by class pattern.
fn observe_mask(
    c: &Circuit,
    m: &ComplexMatrix,
    q: &ComplexMatrix,
    tol: f64,
) -> (ActivationMask, Vec<u8>) {
    let p = c.p as usize;
    let n = c.num_lines - 1;
    let stride = |line: usize| p.pow((c.num_lines - 1 - line) as u32);
    let t_stride = stride(c.target_line);
    let controls = c.control_lines();
    let identity = ComplexMatrix::identity(p);

    // 0: unseen, 1: all active, 2: all idle, 3: mixed.
    let mut state = vec![0u8; 1 << n];
    let mut values = vec![0usize; n];
    for idx in 0..p.pow(n as u32) {
        let mut rest = idx;
        for v in values.iter_mut().rev() {
            *v = rest % p;
            rest /= p;
        }
        let base: usize = controls
            .iter()
            .zip(&values)
            .map(|(&l, &v)| v * stride(l))
            .sum();
        let col = |b: usize| base + b * t_stride;
        let block = ComplexMatrix::from_fn(p, |a, b| m[(col(a), col(b))]);
        let leak = (0..p)
            .flat_map(|b| (0..m.dim()).map(move |r| (r, b)))
            .filter(|&(r, _)| (0..p).all(|a| r != col(a)))
            .map(|(r, b)| m[(r, col(b))].norm())
            .fold(0.0, f64::max);
        let seen = if leak > tol {
            Seen::Other
        } else if block.max_abs_diff(q).is_ok_and(|d| d <= tol) {
            Seen::Active
        } else if block.max_abs_diff(&identity).is_ok_and(|d| d <= tol) {
            Seen::Idle
        } else {
            Seen::Other
        };
        let pat = ActivationMask::pattern_of(&values, c.p) as usize;
        let code = match seen {
            Seen::Active => 1,
            Seen::Idle => 2,
            Seen::Other => 3,
        };
        state[pat] = if state[pat] == 0 || state[pat] == code {
            code
        } else {
            3
        };
    }
    let mut mask = ActivationMask::empty(n);
    let mut inconsistent = Vec::new();
    for (pat, s) in state.into_iter().enumerate() {
        match s {
            1 => mask.insert(pat as u8),
            2 => {}
            _ => inconsistent.push(pat as u8),
        }
    }
    (mask, inconsistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{make_not, random_unitary_seeded};
    use crate::VERIFY_TOL;

    #[test]
    fn deutsch2_conj_passes() {
        let q = random_unitary_seeded(3, 11);
        let r = verify_mode(3, &q, ModeName::Deutsch2Conj, false, false, VERIFY_TOL).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.max_abs_deviation < 1e-10);
    }

    #[test]
    fn wrong_mask_fails() {
        let q = random_unitary_seeded(3, 12);
        let s = synthesize(3, &q, ModeName::Deutsch2Conj, false).unwrap();
        let r = verify_circuit(
            &s.circuit,
            &GateMode::new(ModeName::Deutsch2Disj).mask,
            VERIFY_TOL,
        )
        .unwrap();
        assert!(!r.pass);
        assert_eq!(r.mask_observed, ActivationMask::new(2, [0b11]));
    }

    #[test]
    fn toffoli_three_control_with_not() {
        let n = make_not(3).unwrap();
        let r = verify_mode(3, &n, ModeName::Case8, true, false, VERIFY_TOL).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn unbound_q_is_an_error() {
        let c = Circuit::new(3, 3, 2);
        assert!(matches!(
            verify_circuit(&c, &ActivationMask::empty(2), VERIFY_TOL),
            Err(Error::UnboundQ)
        ));
    }
}
