//! Unitary diagonalization and rational powers of unitary matrices.
//!
//! A unitary matrix is normal, so its complex Schur form is diagonal and the
//! Schur vectors are an orthonormal eigenbasis. Rational powers are then
//! taken eigenvalue by eigenvalue through the principal logarithm.
//!
//! All powers of one base should be computed from a single [`SpectralForm`]:
//! two independent decompositions may resolve an eigenvalue at `-1` onto
//! different branches, which breaks identities such as `Q^a Q^b = Q^(a+b)`.

use std::f64::consts::PI;

use nalgebra::{linalg::Schur, DMatrix};

use super::matrix::{c64, ComplexMatrix};
use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::UNITARY_TOL;

/// Phases this close to `-pi` are moved onto the `+pi` side of the branch cut.
const BRANCH_SNAP: f64 = 1e-10;
const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

/// `source = V diag(lambda) V^dagger` with `V` unitary and `|lambda| = 1`.
#[derive(Clone, Debug)]
pub struct SpectralForm {
    eigenvectors: ComplexMatrix,
    phases: Vec<f64>,
    source: ComplexMatrix,
}

impl SpectralForm {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        let residual = a.unitarity_residual();
        if residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        let n = a.dim();
        let m = DMatrix::from_row_slice(n, n, a.as_slice());
        let schur = Schur::try_new(m, SCHUR_EPS, SCHUR_MAX_ITER).ok_or_else(|| {
            Error::ConvergenceFailure(format!("Schur iteration did not converge for dim {n}"))
        })?;
        let (q, t) = schur.unpack();

        let eigenvectors = ComplexMatrix::from_fn(n, |r, c| q[(r, c)]);
        let phases: Vec<f64> = (0..n).map(|k| principal_phase(t[(k, k)])).collect();
        let form = Self {
            eigenvectors,
            phases,
            source: a.clone(),
        };

        let residual = form.reconstruction_residual();
        if residual > 1e-10 * n as f64 {
            return Err(Error::ConvergenceFailure(format!(
                "spectral reconstruction residual {residual:.3e} exceeds {:.1e}",
                1e-10 * n as f64
            )));
        }
        Ok(form)
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Unit-modulus eigenvalues, in the same order as the eigenvector columns.
    pub fn eigenvalues(&self) -> Vec<c64> {
        self.phases
            .iter()
            .map(|&t| c64::from_polar(1.0, t))
            .collect()
    }

    /// Principal arguments in `(-pi, pi]`.
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn source(&self) -> &ComplexMatrix {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_diagonal(&self.eigenvalues())
    }

    pub fn reconstruction_residual(&self) -> f64 {
        self.reconstruct()
            .max_abs_diff(&self.source)
            .expect("same dimension")
    }

    /// `source^e` with `lambda^e = exp(e * Log lambda)` on the principal branch.
    ///
    /// `e = 0` yields the identity and `e = 1` the source, both exactly.
    pub fn power(&self, e: RationalExponent) -> ComplexMatrix {
        if e.is_zero() {
            return ComplexMatrix::identity(self.dim());
        }
        if e.is_one() {
            return self.source.clone();
        }
        let e = e.to_f64();
        let diag: Vec<c64> = self
            .phases
            .iter()
            .map(|&t| c64::from_polar(1.0, e * t))
            .collect();
        self.apply_diagonal(&diag)
    }

    fn apply_diagonal(&self, diag: &[c64]) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| v[(r, k)] * diag[k] * v[(c, k)].conj()).sum()
        })
    }
}

fn principal_phase(lambda: c64) -> f64 {
    let t = lambda.arg();
    if t <= -PI + BRANCH_SNAP {
        PI
    } else {
        t
    }
}

pub fn spectral(a: &ComplexMatrix) -> Result<SpectralForm> {
    SpectralForm::new(a)
}

/// Principal rational power of a unitary matrix.
pub fn frac_power(a: &ComplexMatrix, e: RationalExponent) -> Result<ComplexMatrix> {
    Ok(SpectralForm::new(a)?.power(e))
}
