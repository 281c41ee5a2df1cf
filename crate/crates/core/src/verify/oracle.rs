use crate::linalg::ComplexMatrix;
use crate::synth::ActivationMask;

/// Brute-force controlled-`Q`: block-diagonal over the basis tuples of the
/// `n_controls` control lines, with `Q` on the target block iff the tuple's
/// class pattern is in `mask`. Control lines are `0..n`, target is line `n`.
pub fn oracle(
    p: u32,
    n_controls: usize,
    q: &ComplexMatrix,
    mask: &ActivationMask,
) -> ComplexMatrix {
    oracle_on(p, n_controls + 1, n_controls, q, mask)
}

/// Same as [`oracle`] for an arbitrary target line; the remaining lines are
/// the controls, in increasing order.
pub fn oracle_on(
    p: u32,
    num_lines: usize,
    target: usize,
    q: &ComplexMatrix,
    mask: &ActivationMask,
) -> ComplexMatrix {
    let pu = p as usize;
    let dim = pu.pow(num_lines as u32);
    let stride = |line: usize| pu.pow((num_lines - 1 - line) as u32);
    let t_stride = stride(target);
    let controls: Vec<usize> = (0..num_lines).filter(|&l| l != target).collect();

    let mut m = ComplexMatrix::identity(dim);
    let mut values = vec![0usize; controls.len()];
    for base in (0..dim).filter(|i| (i / t_stride) % pu == 0) {
        for (v, &line) in values.iter_mut().zip(&controls) {
            *v = (base / stride(line)) % pu;
        }
        if !mask.is_active(&values, p) {
            continue;
        }
        for a in 0..pu {
            for b in 0..pu {
                m[(base + a * t_stride, base + b * t_stride)] = q[(a, b)];
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_unitary_seeded, ONE};
    use crate::synth::{GateMode, ModeName};

    fn active_blocks(m: &ComplexMatrix, p: usize, n: usize) -> usize {
        (0..p.pow(n as u32))
            .filter(|ctl| {
                (0..p).any(|a| {
                    (0..p).any(|b| {
                        (m[(ctl * p + a, ctl * p + b)]
                            - if a == b { ONE } else { crate::linalg::ZERO })
                        .norm()
                            > 1e-12
                    })
                })
            })
            .count()
    }

    #[test]
    fn block_counts() {
        let q = random_unitary_seeded(3, 5);
        let conj = oracle(3, 2, &q, &GateMode::new(ModeName::Deutsch2Conj).mask);
        assert_eq!(active_blocks(&conj, 3, 2), 1);
        let disj = oracle(3, 2, &q, &GateMode::new(ModeName::Deutsch2Disj).mask);
        assert_eq!(active_blocks(&disj, 3, 2), 5);
        let c7 = oracle(3, 3, &q, &GateMode::new(ModeName::Case7).mask);
        assert_eq!(active_blocks(&c7, 3, 3), 6);
    }

    #[test]
    fn identity_q_gives_identity() {
        let i = ComplexMatrix::identity(5);
        for m in [ModeName::Disj3, ModeName::Case8] {
            let o = oracle(5, 3, &i, &GateMode::new(m).mask);
            assert_eq!(o, ComplexMatrix::identity(625));
        }
    }

    #[test]
    fn target_line_placement() {
        let q = random_unitary_seeded(3, 6);
        let mask = GateMode::new(ModeName::Deutsch2Conj).mask;
        let last = oracle(3, 2, &q, &mask);
        let same = oracle_on(3, 3, 2, &q, &mask);
        assert_eq!(last, same);
        // Target on line 0: Q acts on the most significant digit.
        let first = oracle_on(3, 3, 0, &q, &mask);
        assert_eq!(first[(8, 8)], q[(0, 0)]);
        assert_eq!(first[(8, 17)], q[(0, 1)]);
    }
}
