use num_complex::Complex64;

use super::basis::Basis;
use super::matrix::{ComplexMatrix, ZERO};
use super::state::QuantumState;
use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue tolerated by the PSD check.
pub const PSD_TOL: f64 = 1e-9;

/// Density matrix over a labelled tensor-product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    basis: Basis,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and positive semidefiniteness.
    pub fn new(basis: Basis, matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self::unchecked(basis, matrix)?;
        if !rho.matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::Invariant("density matrix is not Hermitian".into()));
        }
        if !rho.is_positive_semidefinite(PSD_TOL) {
            return Err(Error::Invariant(
                "density matrix has an eigenvalue below the PSD tolerance".into(),
            ));
        }
        Ok(rho)
    }

    /// `|ψ⟩⟨ψ|`. The trace equals the state's squared norm, so conditional
    /// states give sub-unit traces.
    pub fn from_pure(state: &QuantumState) -> Self {
        let amps = state.amplitudes();
        Self {
            basis: state.basis().clone(),
            matrix: ComplexMatrix::outer(amps, amps),
        }
    }

    fn unchecked(basis: Basis, matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != basis.dim() {
            return Err(Error::Shape(format!(
                "{}x{} matrix over basis {basis} of dimension {}",
                matrix.rows(),
                matrix.cols(),
                basis.dim()
            )));
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.get(row, col)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            basis: self.basis.clone(),
            matrix: self.matrix.scale(Complex64::new(factor, 0.0)),
        }
    }

    /// Checks every density-matrix invariant against a declared trace.
    pub fn check_invariants(&self, declared_trace: f64) -> Result<()> {
        if !self.matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::Invariant("not Hermitian".into()));
        }
        let tr = self.matrix.trace();
        if (tr.re - declared_trace).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Invariant(format!(
                "trace {tr} differs from declared {declared_trace}"
            )));
        }
        if !self.is_positive_semidefinite(PSD_TOL) {
            return Err(Error::Invariant("not positive semidefinite".into()));
        }
        Ok(())
    }

    /// Whether every eigenvalue is ≥ −`tol`: a Cholesky factorization of
    /// `ρ + tol·I` exists exactly in that case.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        let n = self.matrix.rows();
        let mut a: Vec<Complex64> = self.matrix.as_slice().to_vec();
        for i in 0..n {
            a[i * n + i] += tol;
        }
        // Lower-triangular factor built in place.
        for j in 0..n {
            let mut diag = a[j * n + j].re;
            for k in 0..j {
                diag -= a[j * n + k].norm_sqr();
            }
            if diag < 0.0 {
                return false;
            }
            let d = diag.sqrt();
            a[j * n + j] = Complex64::new(d, 0.0);
            for i in j + 1..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= a[i * n + k] * a[j * n + k].conj();
                }
                a[i * n + j] = if d > 0.0 {
                    s / d
                } else if s.norm() <= tol {
                    ZERO
                } else {
                    // Zero pivot with a non-zero column below it: indefinite.
                    return false;
                };
            }
        }
        true
    }

    /// Traces out the factor at `factor_index`; the result lives on the
    /// remaining factors in their original order.
    pub fn partial_trace(&self, factor_index: usize) -> Result<DensityMatrix> {
        let reduced_basis = self.basis.without(factor_index)?;
        let dims = self.basis.dims();
        let traced = dims[factor_index];
        let outer: usize = dims[..factor_index].iter().product();
        let inner: usize = dims[factor_index + 1..].iter().product();
        let full = traced * inner;
        let dim = outer * inner;
        let src = self.matrix.as_slice();
        let ncols = self.matrix.cols();

        let mut data = vec![ZERO; dim * dim];
        for lo_r in 0..outer {
            for in_r in 0..inner {
                let r = lo_r * inner + in_r;
                for lo_c in 0..outer {
                    for in_c in 0..inner {
                        let c = lo_c * inner + in_c;
                        let mut acc = ZERO;
                        for t in 0..traced {
                            let fr = lo_r * full + t * inner + in_r;
                            let fc = lo_c * full + t * inner + in_c;
                            acc += src[fr * ncols + fc];
                        }
                        data[r * dim + c] = acc;
                    }
                }
            }
        }
        Self::unchecked(reduced_basis, ComplexMatrix::new(dim, dim, data)?)
    }

    /// Traces out the named factor.
    pub fn partial_trace_named(&self, name: &str) -> Result<DensityMatrix> {
        let idx = self
            .basis
            .factor_index(name)
            .ok_or_else(|| Error::Index(format!("no factor named {name:?} in {}", self.basis)))?;
        self.partial_trace(idx)
    }

    /// Diagonal of the matrix, i.e. the probabilities of each basis vector.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.matrix.rows())
            .map(|i| self.matrix.get(i, i).re)
            .collect()
    }
}
