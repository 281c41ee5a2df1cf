//! Gate layouts of the two- and three-control structures.
//!
//! Every shift loop runs `p - 1` times and is followed by one recovery shift,
//! so each shifted control line is moved by `p = 0 (mod p)` in total.

use crate::netlist::{Gate, GateUnitary};

/// `C_a(G1); C_b(G2); (p-1) x {C_a(X on b); C_b(G3)}; C_a(X on b)`.
///
/// `None` entries are omitted; a missing `G3` drops the shift loop as well.
pub(crate) fn two_control(
    p: u32,
    [a, b, t]: [usize; 3],
    [g1, g2, g3]: [Option<GateUnitary>; 3],
) -> Vec<Gate> {
    let mut out = Vec::with_capacity(2 * p as usize + 1);
    if let Some(u) = g1 {
        out.push(Gate::ms(a, t, u));
    }
    if let Some(u) = g2 {
        out.push(Gate::ms(b, t, u));
    }
    if let Some(u) = g3 {
        shift_block(p, &mut out, Shift::Single(a), b, t, u);
    }
    out
}

/// `(p-1) x {C_a(X on b); C_b(U on t)}; C_a(X on b); C_b(U on t)`: the
/// disjunctive Toffoli layout with the `a`-controlled gate moved to the end.
pub(crate) fn two_control_disjunctive_toffoli(
    p: u32,
    [a, b, t]: [usize; 3],
    u: GateUnitary,
) -> Vec<Gate> {
    let mut out = Vec::with_capacity(2 * p as usize);
    shift_block(p, &mut out, Shift::Single(a), b, t, u.clone());
    out.push(Gate::ms(b, t, u));
    out
}

/// Blocks in order A, B, C, D, E, F, G; `None` blocks are omitted along
/// with their recovery shifts.
///
/// * A, B, C: single gates controlled by `a`, `b`, `c`.
/// * D: `b` walked by `a`, gate controlled by `b`.
/// * E: `c` walked by `a`, gate controlled by `c`.
/// * F: `c` walked by `b`, gate controlled by `c`.
/// * G: `c` walked by `MCX(a, b)`, gate controlled by `c`.
pub(crate) fn three_control(
    p: u32,
    [a, b, c, t]: [usize; 4],
    blocks: &[Option<GateUnitary>; 7],
) -> Vec<Gate> {
    let mut out = Vec::new();
    let [ua, ub, uc, ud, ue, uf, ug] = blocks.clone();
    for (ctl, u) in [(a, ua), (b, ub), (c, uc)] {
        if let Some(u) = u {
            out.push(Gate::ms(ctl, t, u));
        }
    }
    if let Some(u) = ud {
        shift_block(p, &mut out, Shift::Single(a), b, t, u);
    }
    if let Some(u) = ue {
        shift_block(p, &mut out, Shift::Single(a), c, t, u);
    }
    if let Some(u) = uf {
        shift_block(p, &mut out, Shift::Single(b), c, t, u);
    }
    if let Some(u) = ug {
        shift_block(p, &mut out, Shift::Double(a, b), c, t, u);
    }
    out
}

#[derive(Clone, Copy)]
pub(crate) enum Shift {
    Single(usize),
    Double(usize, usize),
}

impl Shift {
    fn gate(self, walked: usize) -> Gate {
        match self {
            Shift::Single(a) => Gate::shift(a, walked),
            Shift::Double(a, b) => Gate::mcx(vec![a, b], walked),
        }
    }
}

/// `(p-1) x {shift(walked); C_walked(u on t)}; shift(walked)`.
pub(crate) fn shift_block(
    p: u32,
    out: &mut Vec<Gate>,
    shift: Shift,
    walked: usize,
    t: usize,
    u: GateUnitary,
) {
    for _ in 0..p - 1 {
        out.push(shift.gate(walked));
        out.push(Gate::ms(walked, t, u.clone()));
    }
    out.push(shift.gate(walked));
}
