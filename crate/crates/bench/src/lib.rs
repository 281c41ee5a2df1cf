//! Fixtures shared by the pipeline benchmarks.

use qupit::linalg::random_unitary_seeded;
use qupit::ComplexMatrix;

/// Fixed random `Q` for dimension `p`, so runs are comparable.
pub fn fixture_q(p: u32) -> ComplexMatrix {
    random_unitary_seeded(p as usize, 0x5eed + p as u64)
}
