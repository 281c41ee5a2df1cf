//! Why the G block needs a multi-controlled shift: compares the block built
//! with `MCX(alpha, beta)` walking `chi` against the same block with two
//! cascaded single-control shifts, using `G = Z` as the gate.

use serde::Serialize;

use crate::error::Result;
use crate::exponent::RationalExponent;
use crate::linalg::{make_z, validate_p, ComplexMatrix};
use crate::netlist::{Circuit, Gate, GateUnitary};
use crate::synth::{describe_pattern, ActivationMask};
use crate::verify::simulate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeRow {
    /// Basis values of `(alpha, beta, chi)`.
    pub controls: [usize; 3],
    pub pattern: String,
    /// Power of `Z` applied to the target, or `None` if the target block is
    /// not a power of `Z` (or a control line is left disturbed).
    pub k_mcx: Option<u32>,
    pub k_cascade: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeDemo {
    pub p: u32,
    pub rows: Vec<CascadeRow>,
}

impl CascadeDemo {
    /// Tuples on which the two constructions disagree.
    pub fn disagreements(&self) -> impl Iterator<Item = &CascadeRow> {
        self.rows.iter().filter(|r| r.k_mcx != r.k_cascade)
    }
}

fn z_gate(p: u32) -> Result<GateUnitary> {
    Ok(GateUnitary::explicit(make_z(p)?, RationalExponent::ONE))
}

/// `(p-1) x {MCX(a, b -> c); C_c(Z)}; MCX(a, b -> c)`.
pub fn mcx_block(p: u32) -> Result<Circuit> {
    let z = z_gate(p)?;
    let mut c = Circuit::new(p, 4, 3).with_mode_tag("cascade-mcx");
    for _ in 0..p - 1 {
        c.push(Gate::mcx(vec![0, 1], 2));
        c.push(Gate::ms(2, 3, z.clone()));
    }
    c.push(Gate::mcx(vec![0, 1], 2));
    Ok(c)
}

/// `(p-1) x {C_a(X on c); C_b(X on c); C_c(Z)}; C_a(X on c); C_b(X on c)`.
pub fn cascaded_block(p: u32) -> Result<Circuit> {
    let z = z_gate(p)?;
    let mut c = Circuit::new(p, 4, 3).with_mode_tag("cascade-single");
    for _ in 0..p - 1 {
        c.push(Gate::shift(0, 2));
        c.push(Gate::shift(1, 2));
        c.push(Gate::ms(2, 3, z.clone()));
    }
    c.push(Gate::shift(0, 2));
    c.push(Gate::shift(1, 2));
    Ok(c)
}

/// Reads the power of `Z` realized on the control tuple at block `ctl`.
fn z_power(m: &ComplexMatrix, ctl: usize, powers: &[ComplexMatrix], tol: f64) -> Option<u32> {
    let p = powers[0].dim();
    let block = ComplexMatrix::from_fn(p, |r, c| m[(ctl * p + r, ctl * p + c)]);
    // The column must stay inside its own control tuple.
    let leak: f64 = (0..p)
        .map(|c| {
            (0..m.dim())
                .filter(|r| r / p != ctl)
                .map(|r| m[(r, ctl * p + c)].norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    if leak > tol {
        return None;
    }
    powers
        .iter()
        .position(|zk| block.max_abs_diff(zk).is_ok_and(|d| d <= tol))
        .map(|k| k as u32)
}

pub fn demo_cascade(p: u32) -> Result<CascadeDemo> {
    validate_p(p)?;
    let z = make_z(p)?;
    let powers: Vec<ComplexMatrix> = (0..p).map(|k| z.pow(k)).collect();
    let m_mcx = simulate(&mcx_block(p)?)?;
    let m_cas = simulate(&cascaded_block(p)?)?;
    let pu = p as usize;
    let tol = crate::VERIFY_TOL;
    let mut rows = Vec::with_capacity(pu.pow(3));
    for ctl in 0..pu.pow(3) {
        let controls = [ctl / (pu * pu), (ctl / pu) % pu, ctl % pu];
        rows.push(CascadeRow {
            controls,
            pattern: describe_pattern(ActivationMask::pattern_of(&controls, p), 3),
            k_mcx: z_power(&m_mcx, ctl, &powers, tol),
            k_cascade: z_power(&m_cas, ctl, &powers, tol),
        });
    }
    Ok(CascadeDemo { p, rows })
}
