//! Construction of two- and three-control gates from MS primitives.
//!
//! Every construction emits gates whose target-line unitaries are symbolic
//! powers of the bound `Q`; they are resolved against a single
//! [`SpectralForm`] of `Q` at simulation time, so identities such as
//! `G1 G3 = I` hold to rounding error.

pub(crate) mod layout;
mod mode;
pub mod tables;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::linalg::{make_not, validate_p, ComplexMatrix, SpectralForm};
use crate::netlist::{Circuit, GateUnitary};
use crate::{EQUALITY_TOL, UNITARY_TOL};

pub use mode::{
    describe_pattern, table4_row, ActivationMask, BlockAssignment, BlockLabel, GateClass, GateMode,
    ModeName, Polarity, TABLE4_PATTERNS,
};

/// Explanation attached to a degenerate reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionNote {
    pub mode: ModeName,
    pub intended: String,
    pub realized: String,
    pub control_line: usize,
    pub message: String,
}

/// Output of [`synthesize`].
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub mode: ModeName,
    pub circuit: Circuit,
    pub assignment: BlockAssignment,
    pub note: Option<ReductionNote>,
}

/// Block exponents of a mode.
///
/// Two-control Deutsch modes have no separate Toffoli-class table; with
/// `toffoli_class` set they return their Deutsch-class exponents.
pub fn block_exponents(mode: ModeName, p: u32, toffoli_class: bool) -> Result<BlockAssignment> {
    validate_p(p)?;
    let labels = BlockLabel::for_controls(mode.n_controls());
    let (class, exps): (GateClass, Vec<RationalExponent>) = if mode.is_toffoli2() {
        if !toffoli_class {
            return Err(Error::ModeMismatch(format!(
                "{mode} is a Toffoli-class structure"
            )));
        }
        (
            GateClass::Toffoli,
            tables::toffoli_two_control(mode).unwrap().to_vec(),
        )
    } else if mode.n_controls() == 2 {
        (
            GateClass::Deutsch,
            tables::two_control(mode, p).unwrap().to_vec(),
        )
    } else if toffoli_class {
        let on = tables::toffoli_three_control(mode).unwrap();
        (
            GateClass::Toffoli,
            on.iter()
                .map(|&b| {
                    if b {
                        RationalExponent::ONE
                    } else {
                        RationalExponent::ZERO
                    }
                })
                .collect(),
        )
    } else {
        (
            GateClass::Deutsch,
            tables::three_control(mode, p).unwrap().to_vec(),
        )
    };
    Ok(BlockAssignment {
        class,
        blocks: labels.iter().copied().zip(exps).collect(),
    })
}

/// Resolves every block of an assignment to a matrix through one shared
/// spectral decomposition of `q`.
pub fn resolve_blocks(
    assignment: &BlockAssignment,
    q: &ComplexMatrix,
) -> Result<Vec<(BlockLabel, ComplexMatrix)>> {
    let form = SpectralForm::new(q)?;
    Ok(assignment
        .blocks
        .iter()
        .map(|(l, e)| (*l, form.power(*e)))
        .collect())
}

fn check_q(p: u32, q: &ComplexMatrix) -> Result<()> {
    validate_p(p)?;
    if q.dim() != p as usize {
        return Err(Error::DimensionMismatch {
            left: p as usize,
            right: q.dim(),
        });
    }
    let residual = q.unitarity_residual();
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

fn check_self_inverse(q: &ComplexMatrix) -> Result<()> {
    let residual = q.self_inverse_residual();
    if residual > EQUALITY_TOL {
        return Err(Error::NotSelfInverse { residual });
    }
    Ok(())
}

/// Two-control Toffoli gate with `Q = NOT`, 2p gates.
pub fn synth_toffoli2(p: u32, mode: ModeName) -> Result<Circuit> {
    let not = make_not(p)?;
    synth_toffoli2_with(p, &not, mode)
}

/// Two-control Toffoli structure for any self-inverse `Q`; uses the `N` base
/// when `Q` is the negation itself.
fn synth_toffoli2_with(p: u32, q: &ComplexMatrix, mode: ModeName) -> Result<Circuit> {
    check_q(p, q)?;
    check_self_inverse(q)?;
    let u = if *q == make_not(p)? {
        GateUnitary::negation()
    } else {
        GateUnitary::q(RationalExponent::ONE)
    };
    let lines = [0, 1, 2];
    let gates = match mode {
        ModeName::Toffoli2Conj => layout::two_control(p, lines, [Some(u.clone()), None, Some(u)]),
        ModeName::Toffoli2Disj => layout::two_control_disjunctive_toffoli(p, lines, u),
        other => {
            return Err(Error::ModeMismatch(format!(
                "{other} is not a two-control Toffoli mode"
            )))
        }
    };
    let mut c = Circuit::new(p, 3, 2)
        .with_q(q.clone())
        .with_mode_tag(mode.as_str());
    c.gates = gates;
    Ok(c)
}

/// Two-control Deutsch gate: `2p + 1` MS gates on lines `alpha = 0`,
/// `beta = 1`, target `2`.
pub fn synth_deutsch2(p: u32, q: &ComplexMatrix, mode: ModeName) -> Result<Circuit> {
    check_q(p, q)?;
    if mode.n_controls() != 2 || mode.is_toffoli2() || mode.is_degenerate() {
        return Err(Error::ModeMismatch(format!(
            "{mode} is not a two-control Deutsch mode"
        )));
    }
    SpectralForm::new(q)?;
    let [g1, g2, g3] = tables::two_control(mode, p)
        .unwrap()
        .map(|e| Some(GateUnitary::q(e)));
    let mut c = Circuit::new(p, 3, 2)
        .with_q(q.clone())
        .with_mode_tag(mode.as_str());
    c.gates = layout::two_control(p, [0, 1, 2], [g1, g2, g3]);
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateVariant {
    /// Intended: active when `alpha = |p-1>` or `beta` in Omega.
    A,
    /// Intended: active when `alpha` in Omega or `beta = |p-1>`.
    B,
}

/// Disjunctive mixed-polarity two-control gate, which collapses to a single
/// MS gate: with both controls in Omega every primitive is inhibited, which
/// forces `G2 = G3 = I`.
pub fn synth_deutsch2_degenerate(
    p: u32,
    q: &ComplexMatrix,
    variant: DegenerateVariant,
) -> Result<(Circuit, ReductionNote)> {
    check_q(p, q)?;
    let (mode, control, intended, realized) = match variant {
        DegenerateVariant::A => (
            ModeName::Deutsch2DisjmixedA,
            0,
            "alpha = |p-1> or beta in Omega",
            "alpha = |p-1>",
        ),
        DegenerateVariant::B => (
            ModeName::Deutsch2DisjmixedB,
            1,
            "alpha in Omega or beta = |p-1>",
            "beta = |p-1>",
        ),
    };
    let mut c = Circuit::new(p, 3, 2)
        .with_q(q.clone())
        .with_mode_tag(mode.as_str());
    c.push(crate::netlist::Gate::ms(
        control,
        2,
        GateUnitary::q(RationalExponent::ONE),
    ));
    let other = if control == 0 { "beta" } else { "alpha" };
    let note = ReductionNote {
        mode,
        intended: intended.to_string(),
        realized: realized.to_string(),
        control_line: control,
        message: format!(
            "the two-control structure is the identity whenever both controls are in Omega, \
             so the intended mask ({intended}) is unrealizable; the activation equations force \
             G2 = G3 = I and the gate reduces to a single MS gate applying Q when {realized}, \
             independently of {other}"
        ),
    };
    Ok((c, note))
}

/// Three-control gate on lines `alpha = 0`, `beta = 1`, `chi = 2`, target `3`.
///
/// The G block uses MCX pseudo-gates; lower them with
/// [`expand_mcx`](crate::netlist::expand_mcx). Blocks with exponent 0
/// (or `I` in the Toffoli class) are omitted.
pub fn synth3(p: u32, q: &ComplexMatrix, mode: ModeName, toffoli_class: bool) -> Result<Circuit> {
    check_q(p, q)?;
    if mode.n_controls() != 3 {
        return Err(Error::ModeMismatch(format!(
            "{mode} is not a three-control mode"
        )));
    }
    if toffoli_class {
        check_self_inverse(q)?;
    }
    SpectralForm::new(q)?;
    let assignment = block_exponents(mode, p, toffoli_class)?;
    let blocks: [Option<GateUnitary>; 7] = std::array::from_fn(|i| {
        let e = assignment.blocks[i].1;
        (!e.is_zero()).then(|| GateUnitary::q(e))
    });
    let mut c = Circuit::new(p, 4, 3)
        .with_q(q.clone())
        .with_mode_tag(mode.as_str());
    c.gates = layout::three_control(p, [0, 1, 2, 3], &blocks);
    Ok(c)
}

/// Builds the structure of `mode` from an arbitrary block assignment, with
/// every block as a `Q` power. Zero blocks are omitted. Used to check that
/// perturbed exponent tables are rejected by verification.
pub fn build_from_assignment(
    p: u32,
    q: &ComplexMatrix,
    mode: ModeName,
    assignment: &BlockAssignment,
) -> Result<Circuit> {
    check_q(p, q)?;
    if assignment.n_controls() != mode.n_controls() {
        return Err(Error::ModeMismatch(format!(
            "{mode} needs a {}-control assignment",
            mode.n_controls()
        )));
    }
    let unitary = |e: RationalExponent| (!e.is_zero()).then(|| GateUnitary::q(e));
    let e = assignment.exponents();
    let gates = if mode.n_controls() == 2 {
        let blocks = [unitary(e[0]), unitary(e[1]), unitary(e[2])];
        if mode == ModeName::Toffoli2Disj {
            let [g1, g2, g3] = blocks;
            let mut out = Vec::new();
            if let Some(u) = g1 {
                out.push(crate::netlist::Gate::ms(0, 2, u));
            }
            if let Some(u) = g3 {
                layout::shift_block(p, &mut out, layout::Shift::Single(0), 1, 2, u);
            }
            if let Some(u) = g2 {
                out.push(crate::netlist::Gate::ms(1, 2, u));
            }
            out
        } else {
            layout::two_control(p, [0, 1, 2], blocks)
        }
    } else {
        let blocks: [Option<GateUnitary>; 7] = std::array::from_fn(|i| unitary(e[i]));
        layout::three_control(p, [0, 1, 2, 3], &blocks)
    };
    let lines = mode.n_controls() + 1;
    let mut c = Circuit::new(p, lines, lines - 1)
        .with_q(q.clone())
        .with_mode_tag(mode.as_str());
    c.gates = gates;
    Ok(c)
}

/// Dispatches any mode to its construction.
pub fn synthesize(
    p: u32,
    q: &ComplexMatrix,
    mode: ModeName,
    toffoli_class: bool,
) -> Result<Synthesis> {
    check_q(p, q)?;
    if toffoli_class {
        check_self_inverse(q)?;
    }
    let assignment = block_exponents(mode, p, toffoli_class || mode.is_toffoli2())?;
    let (circuit, note) = match mode {
        ModeName::Toffoli2Conj | ModeName::Toffoli2Disj => (synth_toffoli2_with(p, q, mode)?, None),
        ModeName::Deutsch2DisjmixedA => {
            let (c, n) = synth_deutsch2_degenerate(p, q, DegenerateVariant::A)?;
            (c, Some(n))
        }
        ModeName::Deutsch2DisjmixedB => {
            let (c, n) = synth_deutsch2_degenerate(p, q, DegenerateVariant::B)?;
            (c, Some(n))
        }
        m if m.n_controls() == 2 => (synth_deutsch2(p, q, m)?, None),
        m => (synth3(p, q, m, toffoli_class)?, None),
    };
    Ok(Synthesis {
        mode,
        circuit,
        assignment,
        note,
    })
}
