//! Dense matrices over the Gaussian rationals with exact inversion.
//!
//! These matrices are small (alphabet-sized for gauges, `(d+1)×(d+1)` for
//! signature transforms), so a straightforward dense representation with
//! Gauss-Jordan elimination is all that is needed.  Everything is exact: no
//! pivot-magnitude heuristics, just the first nonzero pivot.

use crate::exact::GaussianRational;
use num_traits::{One, Zero};

/// Dense row-major matrix of Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    /// Builds a matrix from row-major data.  Panics if the shape disagrees
    /// with `data.len()`.
    pub fn new(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data does not match shape");
        Self { rows, cols, data }
    }

    /// Builds a matrix from a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "rows have unequal lengths"
        );
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// The `n×n` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![GaussianRational::zero(); rows * cols])
    }

    /// The `n×n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    /// Matrix product.  Panics if the inner dimensions disagree.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a * rhs.get(k, j);
                    *out.get_mut(i, j) += term;
                }
            }
        }
        out
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        let data = self.data.iter().map(|x| x * c).collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_identity_factor()
            .is_some_and(|c| c.is_one())
    }

    /// Returns `Some(c)` exactly when the matrix equals `c · Id` (including
    /// `c = 0`); `None` for non-square or non-scalar matrices.
    pub fn scalar_identity_factor(&self) -> Option<GaussianRational> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expected_scalar = i == j;
                if expected_scalar && *self.get(i, j) != c {
                    return None;
                }
                if !expected_scalar && !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Exact inverse via Gauss-Jordan elimination; `None` if singular.
    /// Panics if the matrix is not square.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "only square matrices invert");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.get(r, col).is_zero())?;
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot = work.get(col, col).clone();
            work.scale_row(col, &pivot);
            inv.scale_row(col, &pivot);
            for row in 0..n {
                if row == col || work.get(row, col).is_zero() {
                    continue;
                }
                let factor = work.get(row, col).clone();
                work.subtract_scaled_row(row, col, &factor);
                inv.subtract_scaled_row(row, col, &factor);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Divides row `row` by `pivot`.
    fn scale_row(&mut self, row: usize, pivot: &GaussianRational) {
        for j in 0..self.cols {
            let v = self.get(row, j).clone() / pivot;
            *self.get_mut(row, j) = v;
        }
    }

    /// `row ← row − factor · other`.
    fn subtract_scaled_row(&mut self, row: usize, other: usize, factor: &GaussianRational) {
        for j in 0..self.cols {
            let delta = factor * self.get(other, j);
            *self.get_mut(row, j) -= delta;
        }
    }
}
