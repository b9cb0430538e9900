use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Dense row-major real matrix. Sized for the small systems this crate works
/// with (dims 2..=8); factorizations are plain Gaussian elimination with
/// partial pivoting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::ShapeMismatch("matrix must be nonempty".into()));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for (index, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFinite { index, value });
                }
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { rows: n, cols: n, data }
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

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self.get(i, j)).collect())
            .expect("matrix entries are finite")
    }

    pub fn matvec(&self, x: &Vector) -> Vector {
        debug_assert_eq!(x.dim(), self.cols);
        self.matvec_slice(x.as_slice())
    }

    pub(crate) fn matvec_slice(&self, x: &[f64]) -> Vector {
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            out[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        Vector::new(out).expect("finite inputs give finite products")
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    /// Rank by row echelon reduction; pivots below `rel_tol * max_abs`
    /// count as zero.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0;
        }
        let threshold = rel_tol * scale;
        let mut a = self.data.clone();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..n {
            // find pivot row
            let mut pivot = rank;
            let mut best = 0.0;
            for r in rank..m {
                let v = a[r * n + col].abs();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best <= threshold {
                continue;
            }
            if pivot != rank {
                for c in 0..n {
                    a.swap(rank * n + c, pivot * n + c);
                }
            }
            for r in (rank + 1)..m {
                let f = a[r * n + col] / a[rank * n + col];
                for c in col..n {
                    a[r * n + c] -= f * a[rank * n + c];
                }
            }
            rank += 1;
            if rank == m {
                break;
            }
        }
        rank
    }

    /// Determinant via LU with partial pivoting. Square matrices only.
    pub fn det(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant needs a square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].abs();
            for r in (col + 1)..n {
                let v = a[r * n + col].abs();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return Ok(0.0);
            }
            if pivot != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot * n + c);
                }
                det = -det;
            }
            det *= a[col * n + col];
            for r in (col + 1)..n {
                let f = a[r * n + col] / a[col * n + col];
                for c in col..n {
                    a[r * n + c] -= f * a[col * n + c];
                }
            }
        }
        Ok(det)
    }

    /// Solve `A x = b` for square invertible `A`.
    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("solve needs a square matrix".into()));
        }
        let n = self.rows;
        b.check_dim(n)?;
        let mut a = self.data.clone();
        let mut x: Vec<f64> = b.as_slice().to_vec();
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].abs();
            for r in (col + 1)..n {
                let v = a[r * n + col].abs();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return Err(Error::SingularMatrix);
            }
            if pivot != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot * n + c);
                }
                x.swap(col, pivot);
            }
            for r in (col + 1)..n {
                let f = a[r * n + col] / a[col * n + col];
                for c in col..n {
                    a[r * n + c] -= f * a[col * n + c];
                }
                x[r] -= f * x[col];
            }
        }
        for col in (0..n).rev() {
            let mut s = x[col];
            for c in (col + 1)..n {
                s -= a[col * n + c] * x[c];
            }
            x[col] = s / a[col * n + col];
        }
        Vector::new(x)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<f64>> {
    fn from(m: Matrix) -> Vec<Vec<f64>> {
        m.to_rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_solve() {
        let a = Matrix::from_rows(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(a.det().unwrap(), 1.0);
        let b = Vector::from_slice(&[3.0, 2.0]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 2.0]);
    }

    #[test]
    fn rank_detects_dependence() {
        let a = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(a.rank(1e-12), 1);
        let b = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(b.rank(1e-12), 2);
    }

    #[test]
    fn singular_solve_fails() {
        let a = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let b = Vector::from_slice(&[1.0, 1.0]).unwrap();
        assert!(a.solve(&b).is_err());
    }
}
