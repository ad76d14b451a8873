//! Dense complex linear algebra and the quantum primitives built on it:
//! tensor products, operator application, unitarity checks, partial traces,
//! Born distributions and seeded sampling.

mod basis;
mod born;
mod density;
mod matrix;
mod sampling;
mod sparse;
mod state;

pub use basis::{Basis, Factor};
pub use born::{born_distribution, BornDistribution, ProbabilityMap};
pub use density::{DensityMatrix, HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
pub use matrix::{tensor_product, ComplexMatrix};
pub use sampling::{run_stream, sample_outcome, uniform, Sampler, NEGATIVE_TOL, SUM_TOL};
pub use sparse::SparseMatrix;
pub use state::{apply, apply_into, QuantumState, StateKind, NORM_TOL};

/// Tolerance for exact algebraic identities between small compositions.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Tolerance for numerical invariants (norms, traces, Hermiticity).
pub const INVARIANT_TOL: f64 = 1e-10;

pub use num_complex::Complex64;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Matrix literal helper for tests and gate tables.
pub fn real_matrix(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows)
}
