//! Dense complex linear algebra for small p-level systems.

mod gates;
mod matrix;
mod random;
mod spectral;

pub use gates::{is_prime, make_delta, make_not, make_pbar, make_x, make_z, validate_p};
#[cfg(test)]
pub(crate) use matrix::ONE;
pub(crate) use matrix::ZERO;
pub use matrix::{adjoint, c64, is_self_inverse, is_unitary, kron, mat_mul, ComplexMatrix};
pub use random::{random_unitary, random_unitary_seeded};
pub use spectral::{frac_power, spectral, SpectralForm};
