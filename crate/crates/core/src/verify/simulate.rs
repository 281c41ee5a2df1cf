//! Dense simulation of MS netlists.

use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::linalg::{make_not, make_x, ComplexMatrix, SpectralForm, ZERO};
use crate::netlist::{Circuit, Gate, GateBase, GateUnitary};

/// Resolves symbolic gate unitaries to matrices. All `Q` powers come from one
/// spectral decomposition of the bound `Q`; each distinct explicit matrix gets
/// its own decomposition, reused across gates.
pub(crate) struct Resolver {
    p: u32,
    q: Option<SpectralForm>,
    explicit: Vec<SpectralForm>,
    x: ComplexMatrix,
    not: ComplexMatrix,
}

impl Resolver {
    pub(crate) fn new(p: u32, q: Option<&ComplexMatrix>) -> Result<Self> {
        Ok(Self {
            p,
            q: q.map(SpectralForm::new).transpose()?,
            explicit: Vec::new(),
            x: make_x(p)?,
            not: make_not(p)?,
        })
    }

    pub(crate) fn resolve(&mut self, u: &GateUnitary) -> Result<ComplexMatrix> {
        let e = u.exponent;
        match u.base {
            GateBase::X => Ok(self.x.pow(integer_mod(e, self.p as i64)?)),
            GateBase::N => Ok(self.not.pow(integer_mod(e, 2)?)),
            GateBase::Q => Ok(self.q.as_ref().ok_or(Error::UnboundQ)?.power(e)),
            GateBase::Explicit => {
                let m = u
                    .explicit
                    .as_ref()
                    .ok_or_else(|| Error::InvalidMatrix("EXPLICIT gate without matrix".into()))?;
                let idx = match self.explicit.iter().position(|f| f.source() == m) {
                    Some(i) => i,
                    None => {
                        self.explicit.push(SpectralForm::new(m)?);
                        self.explicit.len() - 1
                    }
                };
                Ok(self.explicit[idx].power(e))
            }
        }
    }
}

fn integer_mod(e: RationalExponent, m: i64) -> Result<u32> {
    if !e.is_integer() {
        return Err(Error::InvalidExponent(format!(
            "shift and negation gates need integer exponents, got {e}"
        )));
    }
    Ok(e.numer().rem_euclid(m) as u32)
}

/// Left-multiplies `state` (dimension `p^num_lines`) by the embedded
/// controlled gate.
pub(crate) fn apply_controlled(
    state: &mut ComplexMatrix,
    controls: &[usize],
    target: usize,
    u: &ComplexMatrix,
    p: u32,
    num_lines: usize,
) {
    let p = p as usize;
    let dim = state.dim();
    let stride = |line: usize| p.pow((num_lines - 1 - line) as u32);
    let digit = |i: usize, line: usize| (i / stride(line)) % p;
    let t_stride = stride(target);

    let mut scratch = vec![ZERO; p * dim];
    let data = state.as_mut_slice();
    for base in 0..dim {
        if digit(base, target) != 0 || controls.iter().any(|&c| digit(base, c) != p - 1) {
            continue;
        }
        for k in 0..p {
            let row = base + k * t_stride;
            scratch[k * dim..(k + 1) * dim].copy_from_slice(&data[row * dim..(row + 1) * dim]);
        }
        for a in 0..p {
            let out = &mut data[(base + a * t_stride) * dim..(base + a * t_stride + 1) * dim];
            out.fill(ZERO);
            for b in 0..p {
                let coeff = u[(a, b)];
                if coeff == ZERO {
                    continue;
                }
                for (o, s) in out.iter_mut().zip(&scratch[b * dim..(b + 1) * dim]) {
                    *o += coeff * s;
                }
            }
        }
    }
}

/// Full `p^num_lines` matrix of one gate. `q` is needed for `Q`-based gates.
pub fn embed_gate(
    g: &Gate,
    p: u32,
    num_lines: usize,
    q: Option<&ComplexMatrix>,
) -> Result<ComplexMatrix> {
    let u = g.effective_unitary();
    if u.base == GateBase::Q && q.is_none() {
        return Err(Error::UnboundQ);
    }
    let mut resolver = Resolver::new(p, q)?;
    let m = resolver.resolve(&u)?;
    let mut out = ComplexMatrix::identity((p as usize).pow(num_lines as u32));
    apply_controlled(&mut out, &g.controls, g.target, &m, p, num_lines);
    Ok(out)
}

/// Circuit matrix `G_last * ... * G_1`.
pub fn simulate(c: &Circuit) -> Result<ComplexMatrix> {
    let needs_q = c
        .gates
        .iter()
        .any(|g| g.unitary.as_ref().is_some_and(|u| u.base == GateBase::Q));
    if needs_q && c.q_binding.is_none() {
        return Err(Error::UnboundQ);
    }
    let mut resolver = Resolver::new(c.p, c.q_binding.as_ref())?;
    let mut state = ComplexMatrix::identity(c.dim());
    for g in &c.gates {
        let m = resolver.resolve(&g.effective_unitary())?;
        apply_controlled(&mut state, &g.controls, g.target, &m, c.p, c.num_lines);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_unitary_seeded, ONE};

    #[test]
    fn controlled_shift_block_structure() {
        // C_0(X on 1), p = 3, two lines: X in the alpha = 2 diagonal block.
        let m = embed_gate(&Gate::shift(0, 1), 3, 2, None).unwrap();
        let x = make_x(3).unwrap();
        let i3 = ComplexMatrix::identity(3);
        for a in 0..3 {
            for r in 0..3 {
                for c in 0..3 {
                    let want = if a == 2 { x[(r, c)] } else { i3[(r, c)] };
                    assert_eq!(m[(3 * a + r, 3 * a + c)], want);
                }
            }
        }
        assert!(m.is_unitary(1e-12));
    }

    #[test]
    fn mcx_only_in_top_block() {
        let m = embed_gate(&Gate::mcx(vec![0, 1], 2), 3, 3, None).unwrap();
        let x = make_x(3).unwrap();
        for ab in 0..9 {
            for r in 0..3 {
                for c in 0..3 {
                    let want = if ab == 8 {
                        x[(r, c)]
                    } else if r == c {
                        ONE
                    } else {
                        ZERO
                    };
                    assert_eq!(m[(3 * ab + r, 3 * ab + c)], want);
                }
            }
        }
    }

    #[test]
    fn control_reading_zero_acts_as_identity() {
        let g = Gate::ms(0, 1, GateUnitary::q(RationalExponent::ONE));
        let q = random_unitary_seeded(3, 4);
        let m = embed_gate(&g, 3, 2, Some(&q)).unwrap();
        // Column for |0>|k>: unaffected.
        for k in 0..3 {
            for r in 0..9 {
                assert_eq!(m[(r, k)], if r == k { ONE } else { ZERO });
            }
        }
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(3, 3, 2);
        assert_eq!(simulate(&c).unwrap(), ComplexMatrix::identity(27));
    }

    #[test]
    fn unbound_q() {
        let mut c = Circuit::new(3, 2, 1);
        c.push(Gate::ms(0, 1, GateUnitary::q(RationalExponent::ONE)));
        assert!(matches!(simulate(&c), Err(Error::UnboundQ)));
        assert!(matches!(
            embed_gate(&c.gates[0], 3, 2, None),
            Err(Error::UnboundQ)
        ));
    }

    #[test]
    fn simulate_equals_product_of_embeddings() {
        let q = random_unitary_seeded(3, 9);
        let mut c = Circuit::new(3, 3, 2).with_q(q.clone());
        c.push(Gate::ms(0, 2, GateUnitary::q(RationalExponent::frac(1, 3))));
        c.push(Gate::shift(0, 1));
        c.push(Gate::ms(
            1,
            2,
            GateUnitary::q(RationalExponent::frac(-2, 3)),
        ));
        c.push(Gate::mcx(vec![0, 1], 2));
        c.push(Gate::ms(2, 0, GateUnitary::negation()));
        let mut prod = ComplexMatrix::identity(27);
        for g in &c.gates {
            prod = embed_gate(g, 3, 3, Some(&q))
                .unwrap()
                .mat_mul(&prod)
                .unwrap();
        }
        assert!(simulate(&c).unwrap().approx_eq(&prod, 1e-12));
    }
}
