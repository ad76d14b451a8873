//! Dense complex matrices.
//!
//! Storage is row-major. Every constructor rejects NaN and infinite entries,
//! so a `ComplexMatrix` that exists is always finite.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::Size(format!("{rows} x {cols} overflows usize")))?;
        if data.len() != len {
            return Err(Error::Shape(format!(
                "{rows} x {cols} matrix needs {len} entries, got {}",
                data.len()
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row slices. Panics on ragged input; intended
    /// for literal gate tables.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), ncols, "ragged row in matrix literal");
                r.iter().map(|&x| Complex64::new(x, 0.0))
            })
            .collect();
        Self::new(rows.len(), ncols, data).expect("finite matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Column vector `|v><v|`-style outer product `u v^H`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let data = u
            .iter()
            .flat_map(|&a| v.iter().map(move |&b| a * b.conj()))
            .collect();
        Self {
            rows: u.len(),
            cols: v.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "{}x{} operator applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// `self·rhs − rhs·self`
    pub fn commutator(&self, rhs: &ComplexMatrix) -> Result<Self> {
        self.matmul(rhs)?.sub(&rhs.matmul(self)?)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − rhs`.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> Result<f64> {
        self.check_same_shape(rhs)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, rhs: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(rhs).is_ok_and(|d| d <= tol)
    }

    /// Whether `m^H m = I` within `tol` (max-abs entry of the residual).
    /// Requires a square matrix; use [`ComplexMatrix::is_isometry`] otherwise.
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "is_unitary needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.is_isometry(tol))
    }

    /// Whether `m^H m` is the identity on the input space within `tol`.
    pub fn is_isometry(&self, tol: f64) -> bool {
        let gram = self.adjoint().matmul(self).expect("adjoint shapes agree");
        gram.approx_eq(&Self::identity(self.cols), tol)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.adjoint(), tol)
    }

    fn check_same_shape(&self, rhs: &ComplexMatrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }
}

/// Kronecker product `a ⊗ b`.
///
/// Entry `(i_a·b.rows + i_b, j_a·b.cols + j_b)` of the result is
/// `a[i_a, j_a] · b[i_b, j_b]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let overflow = || {
        Error::Size(format!(
            "tensor product of {}x{} and {}x{} overflows usize",
            a.rows, a.cols, b.rows, b.cols
        ))
    };
    let rows = a.rows.checked_mul(b.rows).ok_or_else(overflow)?;
    let cols = a.cols.checked_mul(b.cols).ok_or_else(overflow)?;
    rows.checked_mul(cols).ok_or_else(overflow)?;

    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a.data[ia * a.cols + ja];
            if x == ZERO {
                continue;
            }
            for ib in 0..b.rows {
                let base = (ia * b.rows + ib) * cols + ja * b.cols;
                let b_row = &b.data[ib * b.cols..(ib + 1) * b.cols];
                for (o, &y) in out.data[base..base + b.cols].iter_mut().zip(b_row) {
                    *o = x * y;
                }
            }
        }
    }
    Ok(out)
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
