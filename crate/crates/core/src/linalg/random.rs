use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{c64, ComplexMatrix};

/// Random unitary `V diag(e^{i theta}) V^dagger`.
///
/// `V` is the Gram-Schmidt orthonormalization of a complex Gaussian matrix
/// and the phases are uniform on `(-pi, pi]`.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let v = random_orthonormal(dim, rng);
    let phases: Vec<c64> = (0..dim)
        .map(|_| c64::from_polar(1.0, PI - rng.random::<f64>() * 2.0 * PI))
        .collect();
    let n = dim;
    ComplexMatrix::from_fn(n, |r, c| {
        (0..n)
            .map(|k| v[(r, k)] * phases[k] * v[(c, k)].conj())
            .sum()
    })
}

pub fn random_unitary_seeded(dim: usize, seed: u64) -> ComplexMatrix {
    random_unitary(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Columns form an orthonormal basis.
fn random_orthonormal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<c64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| c64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect()
            })
            .collect();
        let mut degenerate = false;
        for j in 0..dim {
            // Two passes of modified Gram-Schmidt keep the basis orthogonal to
            // machine precision.
            for _ in 0..2 {
                for i in 0..j {
                    let (done, rest) = cols.split_at_mut(j);
                    let proj: c64 = done[i]
                        .iter()
                        .zip(&rest[0])
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    for (x, y) in rest[0].iter_mut().zip(&done[i]) {
                        *x -= proj * y;
                    }
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            cols[j].iter_mut().for_each(|z| *z /= norm);
        }
        if !degenerate {
            let mut m = ComplexMatrix::zeros(dim);
            for (c, col) in cols.iter().enumerate() {
                for (r, z) in col.iter().enumerate() {
                    m[(r, c)] = *z;
                }
            }
            return m;
        }
    }
}
