//! Dense exact matrices over a single scalar backend.

use super::scalar::{Field, Scalar};
use crate::{Error, Result};
use rand::Rng;

/// A dense row-major matrix; every entry shares one backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, field: Field, entries: Vec<Scalar>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix entries length {} != {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::BackendMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: Field,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.field(), field, "entry backend mismatch");
                entries.push(e);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Builds from integer rows (test and sampling convenience).
    pub fn from_int_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, field, |r, c| {
            Scalar::int(field, rows[r][c])
        })
    }

    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix::from_fn(rows, cols, field, |_, _| Scalar::zero(field))
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        Matrix::from_fn(n, n, field, |r, c| {
            if r == c {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
    }

    /// The block matrix `[[0, E(n/2)], [-E(n/2), 0]]` of the standard
    /// skew-symmetric bilinear form. Errors on odd n.
    pub fn j_form(n: usize, field: Field) -> Result<Matrix> {
        if n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        let h = n / 2;
        Ok(Matrix::from_fn(n, n, field, |r, c| {
            if r < h && c == r + h {
                Scalar::one(field)
            } else if r >= h && c == r - h {
                Scalar::int(field, -1)
            } else {
                Scalar::zero(field)
            }
        }))
    }

    pub fn random_small<R: Rng + ?Sized>(
        rows: usize,
        cols: usize,
        field: Field,
        rng: &mut R,
        bound: i64,
    ) -> Matrix {
        Matrix::from_fn(rows, cols, field, |_, _| {
            Scalar::random_small(field, rng, bound)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry backend mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn at(&self, r: usize, c: usize) -> Result<&Scalar> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "({r},{c}) in {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.get(r, c))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| {
            self.get(c, r).clone()
        })
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::BackendMismatch);
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c).add(rhs.get(r, c))
        }))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c).sub(rhs.get(r, c))
        }))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c).neg()
        })
    }

    pub fn scale(&self, a: &Scalar) -> Matrix {
        assert_eq!(a.field(), self.field, "scalar backend mismatch");
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c).mul(a)
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::BackendMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, self.field, |r, c| {
            let mut acc = Scalar::zero(self.field);
            for k in 0..self.cols {
                acc = acc.add(&self.get(r, k).mul(rhs.get(k, c)));
            }
            acc
        }))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..=r).all(|c| self.get(r, c).add(self.get(c, r)).is_zero())
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Exact inverse by Gauss-Jordan elimination. Errors on singular input
    /// (for dual-number matrices: singular real part).
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n, self.field);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| a.get(r, col).inv().is_ok())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                for c in 0..n {
                    let tmp = a.get(pivot_row, c).clone();
                    a.set(pivot_row, c, a.get(col, c).clone());
                    a.set(col, c, tmp);
                    let tmp = inv.get(pivot_row, c).clone();
                    inv.set(pivot_row, c, inv.get(col, c).clone());
                    inv.set(col, c, tmp);
                }
            }
            let piv = a.get(col, col).inv()?;
            for c in 0..n {
                a.set(col, c, a.get(col, c).mul(&piv));
                inv.set(col, c, inv.get(col, c).mul(&piv));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in 0..n {
                    a.set(r, c, a.get(r, c).sub(&factor.mul(a.get(col, c))));
                    inv.set(r, c, inv.get(r, c).sub(&factor.mul(inv.get(col, c))));
                }
            }
        }
        Ok(inv)
    }

    /// Lifts prime-field entries to their canonical rational representatives.
    pub fn lift_to_rational(&self) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.lift_to_rational()?);
        }
        Matrix::new(self.rows, self.cols, Field::Rational, entries)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.reduce_mod(p)?);
        }
        Matrix::new(self.rows, self.cols, Field::Prime(p), entries)
    }

    /// Serializes entries as a grid of strings (the JSON wire format).
    pub fn to_string_grid(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }

    pub fn from_string_grid(field: Field, grid: &[Vec<String>]) -> Result<Matrix> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::Schema("ragged matrix rows".into()));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for row in grid {
            for s in row {
                entries.push(Scalar::parse(field, s)?);
            }
        }
        Matrix::new(rows, cols, field, entries)
    }
}
