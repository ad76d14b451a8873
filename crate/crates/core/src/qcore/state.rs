use num_complex::Complex64;
use serde::Serialize;

use super::basis::Basis;
use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Squared-norm tolerance for the `Normalized` flag.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    /// Squared norm within [`NORM_TOL`] of 1.
    Normalized,
    /// Post-selected or otherwise sub-normalized; renormalize before
    /// reading probabilities off it.
    Conditional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    basis: Basis,
    amplitudes: Vec<Complex64>,
    kind: StateKind,
}

impl QuantumState {
    /// A normalized state. Fails if the squared norm is off by more than
    /// [`NORM_TOL`].
    pub fn normalized(basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        let s = Self::conditional(basis, amplitudes)?;
        let n2 = s.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::Invariant(format!(
                "state flagged normalized has squared norm {n2}"
            )));
        }
        Ok(Self {
            kind: StateKind::Normalized,
            ..s
        })
    }

    pub fn conditional(basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::Shape(format!(
                "basis {basis} has dimension {}, got {} amplitudes",
                basis.dim(),
                amplitudes.len()
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Argument("non-finite amplitude".into()));
        }
        Ok(Self {
            basis,
            amplitudes,
            kind: StateKind::Conditional,
        })
    }

    /// Tags the state by its actual norm.
    pub fn tagged(basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        let s = Self::conditional(basis, amplitudes)?;
        if (s.norm_sqr() - 1.0).abs() <= NORM_TOL {
            Ok(Self {
                kind: StateKind::Normalized,
                ..s
            })
        } else {
            Ok(s)
        }
    }

    /// The basis vector with the given composite label, e.g. `"↓off"`.
    pub fn basis_state(basis: Basis, label: &str) -> Result<Self> {
        let idx = basis
            .index_of(label)
            .ok_or_else(|| Error::Argument(format!("no basis vector labelled {label:?}")))?;
        let mut amps = vec![ZERO; basis.dim()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Self::normalized(basis, amps)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn amplitude(&self, label: &str) -> Option<Complex64> {
        self.basis.index_of(label).map(|i| self.amplitudes[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Returns the unit-norm state together with the squared norm it was
    /// divided by.
    pub fn renormalized(&self) -> Result<(QuantumState, f64)> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::DegenerateState("zero-norm state".into()));
        }
        let inv = 1.0 / n2.sqrt();
        let amps = self.amplitudes.iter().map(|&z| z * inv).collect();
        Ok((
            QuantumState {
                basis: self.basis.clone(),
                amplitudes: amps,
                kind: StateKind::Normalized,
            },
            n2,
        ))
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &QuantumState) -> QuantumState {
        let mut factors = self.basis.factors().to_vec();
        factors.extend_from_slice(other.basis.factors());
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        QuantumState::tagged(Basis::new(factors), amps).expect("product dimensions agree")
    }

    /// Largest amplitude difference; the states must share a basis.
    pub fn max_abs_diff(&self, other: &QuantumState) -> Result<f64> {
        if self.basis != other.basis {
            return Err(Error::Shape(format!(
                "comparing states over {} and {}",
                self.basis, other.basis
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Applies a square operator, keeping the state's basis.
pub fn apply(op: &ComplexMatrix, s: &QuantumState) -> Result<QuantumState> {
    apply_into(op, s, s.basis().clone())
}

/// Applies `op` and labels the result with `out_basis`, which must match the
/// operator's row count.
pub fn apply_into(op: &ComplexMatrix, s: &QuantumState, out_basis: Basis) -> Result<QuantumState> {
    if op.rows() != out_basis.dim() {
        return Err(Error::Shape(format!(
            "operator has {} rows but output basis {out_basis} has dimension {}",
            op.rows(),
            out_basis.dim()
        )));
    }
    let amps = op.apply_vec(s.amplitudes())?;
    QuantumState::tagged(out_basis, amps)
}
