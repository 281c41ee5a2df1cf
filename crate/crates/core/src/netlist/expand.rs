//! Lowering of multi-controlled X pseudo-gates to single-control MS gates.
//!
//! A two-control MCX becomes the two-control conjunctive Deutsch structure
//! with `Q = X` (2p + 1 gates). A three-control MCX becomes the three-control
//! conjunctive structure with `Q = X`, whose own two-control MCX gates are
//! lowered in turn (2p^2 + 4p + 1 gates).

use super::{Circuit, Gate, GateUnitary};
use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::linalg::make_x;
use crate::synth::{layout, tables, ModeName};

pub fn expand_mcx(c: &Circuit) -> Result<Circuit> {
    if c.mcx_count() == 0 {
        return Ok(c.clone());
    }
    let lowering = Lowering::new(c.p)?;
    let mut gates = Vec::with_capacity(c.gates.len() * 2 * c.p as usize);
    for g in &c.gates {
        if g.is_mcx() {
            lowering.lower(&g.controls, g.target, &mut gates)?;
        } else {
            gates.push(g.clone());
        }
    }
    Ok(Circuit { gates, ..c.clone() })
}

struct Lowering {
    p: u32,
    x: crate::linalg::ComplexMatrix,
}

impl Lowering {
    fn new(p: u32) -> Result<Self> {
        Ok(Self { p, x: make_x(p)? })
    }

    fn root(&self, e: RationalExponent) -> GateUnitary {
        GateUnitary::explicit(self.x.clone(), e)
    }

    fn lower(&self, controls: &[usize], target: usize, out: &mut Vec<Gate>) -> Result<()> {
        match *controls {
            [a, b] => {
                let [g1, g2, g3] = tables::two_control(ModeName::Deutsch2Conj, self.p)
                    .expect("conjunctive table exists");
                out.extend(layout::two_control(
                    self.p,
                    [a, b, target],
                    [
                        Some(self.root(g1)),
                        Some(self.root(g2)),
                        Some(self.root(g3)),
                    ],
                ));
                Ok(())
            }
            [a, b, ch] => {
                let table = tables::three_control(ModeName::Conj3, self.p)
                    .expect("conjunctive table exists");
                let blocks = table.map(|e| (!e.is_zero()).then(|| self.root(e)));
                for g in layout::three_control(self.p, [a, b, ch, target], &blocks) {
                    if g.is_mcx() {
                        self.lower(&g.controls, g.target, out)?;
                    } else {
                        out.push(g);
                    }
                }
                Ok(())
            }
            _ => Err(Error::UnsupportedArity(controls.len())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_control_mcx_gate_count() {
        let mut c = Circuit::new(5, 3, 2);
        c.push(Gate::mcx(vec![0, 1], 2));
        let e = expand_mcx(&c).unwrap();
        assert_eq!(e.len(), 11);
        assert_eq!(e.mcx_count(), 0);
    }

    #[test]
    fn three_control_mcx_gate_count() {
        let mut c = Circuit::new(3, 4, 3);
        c.push(Gate::mcx(vec![0, 1, 2], 3));
        assert_eq!(expand_mcx(&c).unwrap().len(), 2 * 9 + 4 * 3 + 1);
    }

    #[test]
    fn mcx_free_circuit_unchanged() {
        let mut c = Circuit::new(3, 2, 1);
        c.push(Gate::shift(0, 1));
        assert_eq!(expand_mcx(&c).unwrap(), c);
    }

    #[test]
    fn four_controls_unsupported() {
        let mut c = Circuit::new(3, 5, 4);
        c.push(Gate::mcx(vec![0, 1, 2, 3], 4));
        assert!(matches!(expand_mcx(&c), Err(Error::UnsupportedArity(4))));
    }
}
