//! Compressed sparse row matrices.
//!
//! The eraser's crystal and screen maps live on a `(2N)²`-dimensional
//! signal⊗idler space. At `N = 256` a dense screen matrix would need
//! 2N·4N² ≈ 1.3·10⁸ entries, while it only has 2N² non-zeros. These maps
//! and their Kronecker-lifted optics are therefore held in CSR form and
//! densified once the composition is back on the 2N-dimensional space.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseMatrix {
    /// Builds a matrix from `(row, col, value)` triplets. Duplicate
    /// positions are summed; exact zeros are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, Complex64)>,
    ) -> Result<Self> {
        rows.checked_mul(cols)
            .ok_or_else(|| Error::Size(format!("{rows} x {cols} overflows usize")))?;
        if let Some(&(r, c, _)) = triplets.iter().find(|&&(r, c, _)| r >= rows || c >= cols) {
            return Err(Error::Index(format!(
                "entry ({r}, {c}) outside {rows}x{cols} matrix"
            )));
        }
        if let Some(&(r, c, _)) = triplets
            .iter()
            .find(|(_, _, z)| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { row: r, col: c });
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));

        let mut row_ptr = vec![0; rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().expect("previous entry") += v;
            } else {
                row_ptr[r + 1] += 1;
                col_idx.push(c);
                values.push(v);
                last = Some((r, c));
            }
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        }
        .pruned())
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            rows: dim,
            cols: dim,
            row_ptr: (0..=dim).collect(),
            col_idx: (0..dim).collect(),
            values: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    pub fn from_dense(m: &ComplexMatrix) -> Self {
        let triplets = (0..m.rows())
            .flat_map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, &z)| z != ZERO)
                    .map(move |(c, &z)| (r, c, z))
            })
            .collect();
        Self::from_triplets(m.rows(), m.cols(), triplets).expect("dense matrix is well-formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Iterates `(col, value)` over the stored entries of one row.
    pub fn row_entries(&self, row: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        self.col_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.col_idx[span.clone()].binary_search(&col) {
            Ok(pos) => self.values[span.start + pos],
            Err(_) => ZERO,
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut data = vec![ZERO; self.rows * self.cols];
        for r in 0..self.rows {
            for (c, v) in self.row_entries(r) {
                data[r * self.cols + c] = v;
            }
        }
        ComplexMatrix::new(self.rows, self.cols, data).expect("finite entries")
    }

    pub fn adjoint(&self) -> Self {
        let triplets = (0..self.rows)
            .flat_map(|r| self.row_entries(r).map(move |(c, v)| (c, r, v.conj())))
            .collect();
        Self::from_triplets(self.cols, self.rows, triplets).expect("transposed shape is valid")
    }

    pub fn apply_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "{}x{} operator applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row_entries(r).map(|(c, a)| a * v[c]).sum())
            .collect())
    }

    /// Sparse product `self · rhs` (row-wise Gustavson accumulation).
    pub fn matmul(&self, rhs: &SparseMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut acc = vec![ZERO; rhs.cols];
        let mut occupied = vec![false; rhs.cols];
        let mut touched = Vec::new();

        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for r in 0..self.rows {
            for (k, a) in self.row_entries(r) {
                for (c, b) in rhs.row_entries(k) {
                    if !occupied[c] {
                        occupied[c] = true;
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if acc[c] != ZERO {
                    col_idx.push(c);
                    values.push(acc[c]);
                }
                acc[c] = ZERO;
                occupied[c] = false;
            }
            touched.clear();
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Kronecker product `self ⊗ rhs`, with the same index convention as
    /// [`super::tensor_product`].
    pub fn kron(&self, rhs: &SparseMatrix) -> Result<Self> {
        let overflow = || Error::Size("sparse tensor product overflows usize".into());
        let rows = self.rows.checked_mul(rhs.rows).ok_or_else(overflow)?;
        let cols = self.cols.checked_mul(rhs.cols).ok_or_else(overflow)?;
        let mut triplets = Vec::with_capacity(self.nnz() * rhs.nnz());
        for ra in 0..self.rows {
            for (ca, a) in self.row_entries(ra) {
                for rb in 0..rhs.rows {
                    for (cb, b) in rhs.row_entries(rb) {
                        triplets.push((ra * rhs.rows + rb, ca * rhs.cols + cb, a * b));
                    }
                }
            }
        }
        Self::from_triplets(rows, cols, triplets)
    }

    /// Whether `m^H m = I` within `tol`.
    pub fn is_isometry(&self, tol: f64) -> bool {
        let gram = self.adjoint().matmul(self).expect("adjoint shapes agree");
        let identity = Self::identity(self.cols);
        gram.max_abs_diff(&identity).is_ok_and(|d| d <= tol)
    }

    /// Square-only unitarity check; see [`ComplexMatrix::is_unitary`].
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "is_unitary needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.is_isometry(tol))
    }

    pub fn max_abs_diff(&self, rhs: &SparseMatrix) -> Result<f64> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut worst = 0.0_f64;
        for r in 0..self.rows {
            let mut a = self.row_entries(r).peekable();
            let mut b = rhs.row_entries(r).peekable();
            loop {
                let d = match (a.peek().copied(), b.peek().copied()) {
                    (None, None) => break,
                    (Some((_, x)), None) => {
                        a.next();
                        x
                    }
                    (None, Some((_, y))) => {
                        b.next();
                        y
                    }
                    (Some((ca, x)), Some((cb, y))) => {
                        if ca == cb {
                            a.next();
                            b.next();
                            x - y
                        } else if ca < cb {
                            a.next();
                            x
                        } else {
                            b.next();
                            y
                        }
                    }
                };
                worst = worst.max(d.norm());
            }
        }
        Ok(worst)
    }

    fn pruned(mut self) -> Self {
        let mut row_ptr = vec![0; self.rows + 1];
        let mut write = 0;
        for r in 0..self.rows {
            for read in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.values[read] != ZERO {
                    self.col_idx[write] = self.col_idx[read];
                    self.values[write] = self.values[read];
                    write += 1;
                }
            }
            row_ptr[r + 1] = write;
        }
        self.col_idx.truncate(write);
        self.values.truncate(write);
        self.row_ptr = row_ptr;
        self
    }
}
