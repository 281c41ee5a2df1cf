use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[allow(non_camel_case_types)]
pub type c64 = Complex64;

pub(crate) const ZERO: c64 = c64::new(0.0, 0.0);
pub(crate) const ONE: c64 = c64::new(1.0, 0.0);

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<c64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; rejects wrong lengths and
    /// non-finite values.
    pub fn new(dim: usize, data: Vec<c64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "{} entries cannot form a {dim}x{dim} matrix",
                data.len()
            )));
        }
        if let Some(i) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                i / dim,
                i % dim
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> c64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn diagonal(values: &[c64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[c64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [c64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[c64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    /// Standard matrix product `self * rhs`.
    pub fn mat_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(ComplexMatrix { dim: n, data: out })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    /// Kronecker product with `self`'s index most significant.
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let (m, n) = (self.dim, rhs.dim);
        ComplexMatrix::from_fn(m * n, |r, c| self[(r / n, c / n)] * rhs[(r % n, c % n)])
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[c64]) -> Result<Vec<c64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> ComplexMatrix {
        let mut base = self.clone();
        let mut acc = ComplexMatrix::identity(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mat_mul(&base).expect("same dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.mat_mul(&base).expect("same dimension");
            }
        }
        acc
    }

    pub fn scale(&self, s: c64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// `max |A A^dagger - I|` entrywise.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.mat_mul(&self.adjoint()).expect("same dimension");
        prod.max_abs_diff(&ComplexMatrix::identity(self.dim))
            .expect("same dimension")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// `max |A A - I|` entrywise.
    pub fn self_inverse_residual(&self) -> f64 {
        let prod = self.mat_mul(self).expect("same dimension");
        prod.max_abs_diff(&ComplexMatrix::identity(self.dim))
            .expect("same dimension")
    }

    pub fn is_self_inverse(&self, tol: f64) -> bool {
        self.self_inverse_residual() <= tol
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = c64;
    fn index(&self, (r, c): (usize, usize)) -> &c64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut c64 {
        &mut self.data[r * self.dim + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mat_mul(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

pub fn is_unitary(a: &ComplexMatrix, tol: f64) -> bool {
    a.is_unitary(tol)
}

pub fn is_self_inverse(a: &ComplexMatrix, tol: f64) -> bool {
    a.is_self_inverse(tol)
}

/// Wire form: `{"dim": n, "entries": [[re, im], ...]}` in row-major order.
#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc {
            dim: self.dim,
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(deserializer)?;
        let data = doc
            .entries
            .iter()
            .map(|[re, im]| c64::new(*re, *im))
            .collect();
        ComplexMatrix::new(doc.dim, data).map_err(serde::de::Error::custom)
    }
}

impl ComplexMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}
