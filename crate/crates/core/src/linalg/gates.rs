//! Standard p-valued gate matrices.

use std::f64::consts::PI;

use super::matrix::{c64, ComplexMatrix, ONE};
use crate::error::{Error, Result};

/// Accepts odd `p >= 3`. Composite odd values are allowed with a warning:
/// the constructions only rely on oddness.
pub fn validate_p(p: u32) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidP(p));
    }
    if !is_prime(p) {
        log::warn!("p = {p} is odd but not prime");
    }
    Ok(())
}

pub fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn permutation(p: usize, image: impl Fn(usize) -> usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(p);
    for k in 0..p {
        m[(image(k), k)] = ONE;
    }
    m
}

/// Cyclic shift `|k> -> |k+1 mod p>`.
pub fn make_x(p: u32) -> Result<ComplexMatrix> {
    validate_p(p)?;
    let p = p as usize;
    Ok(permutation(p, |k| (k + 1) % p))
}

/// Involutive negation `|k> -> |p-1-k>` (the anti-diagonal).
pub fn make_not(p: u32) -> Result<ComplexMatrix> {
    validate_p(p)?;
    let p = p as usize;
    Ok(permutation(p, |k| p - 1 - k))
}

/// Scaling by `p-1`: `|k> -> |(p-1) k mod p>`.
pub fn make_pbar(p: u32) -> Result<ComplexMatrix> {
    validate_p(p)?;
    let p = p as usize;
    Ok(permutation(p, |k| (k * (p - 1)) % p))
}

/// Clock matrix `diag(1, xi, ..., xi^(p-1))` with `xi = exp(2 pi i / p)`.
pub fn make_z(p: u32) -> Result<ComplexMatrix> {
    validate_p(p)?;
    let phases: Vec<c64> = (0..p)
        .map(|k| c64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64))
        .collect();
    Ok(ComplexMatrix::diagonal(&phases))
}

/// The 2x2 binary Deutsch core `[[i cos a, sin a], [sin a, i cos a]]`.
pub fn make_delta(alpha: f64) -> ComplexMatrix {
    let (s, c) = alpha.sin_cos();
    let ic = c64::new(0.0, c);
    let s = c64::new(s, 0.0);
    ComplexMatrix::new(2, vec![ic, s, s, ic]).expect("2x2 finite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(p: usize, k: usize) -> Vec<c64> {
        let mut v = vec![c64::new(0.0, 0.0); p];
        v[k] = ONE;
        v
    }

    #[test]
    fn x_shifts_basis_states() {
        let x = make_x(3).unwrap();
        assert_eq!(x.apply(&ket(3, 0)).unwrap(), ket(3, 1));
        assert_eq!(x.apply(&ket(3, 2)).unwrap(), ket(3, 0));
    }

    #[test]
    fn pbar_scales_one_to_top() {
        let pb = make_pbar(7).unwrap();
        assert_eq!(pb.apply(&ket(7, 1)).unwrap(), ket(7, 6));
    }

    #[test]
    fn not_is_involution() {
        for p in [3, 5, 7] {
            let n = make_not(p).unwrap();
            assert_eq!(n.mat_mul(&n).unwrap(), ComplexMatrix::identity(p as usize));
            assert!(n.is_self_inverse(0.0));
        }
        assert!(!make_x(3).unwrap().is_self_inverse(1e-9));
    }

    #[test]
    fn delta_at_half_pi_is_antidiagonal() {
        let d = make_delta(PI / 2.0);
        assert!(d[(0, 0)].norm() < 1e-15 && d[(1, 1)].norm() < 1e-15);
        assert!((d[(0, 1)] - ONE).norm() < 1e-15 && (d[(1, 0)] - ONE).norm() < 1e-15);
        assert!(make_delta(0.3).is_unitary(1e-12));
    }

    #[test]
    fn invalid_p() {
        for p in [0, 1, 2, 4, 10] {
            assert!(matches!(make_x(p), Err(Error::InvalidP(_))));
        }
        // Odd composite is accepted.
        assert!(make_not(9).is_ok());
    }

    #[test]
    fn pair_exchange_is_self_inverse() {
        let m = permutation(5, |k| match k {
            1 => 3,
            3 => 1,
            k => k,
        });
        assert!(m.is_self_inverse(0.0));
    }
}
