//! Row-major dense matrices and LU factorization with partial pivoting.

use std::ops::{Index, IndexMut};

use crate::error::{BemError, Result};
use crate::scalar::Real;

/// Pivots smaller than this in magnitude abort the factorization.
pub const PIVOT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(BemError::Dimension {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let data: Vec<T> = rows.into_iter().flatten().collect();
        debug_assert_eq!(data.len(), n * cols);
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(BemError::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// Factorizes a square matrix as `PA = LU`.
    pub fn lu(&self) -> Result<LuFactors<T>> {
        LuFactors::new(self)
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        self.lu()?.solve(rhs)
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Packed `L` (unit diagonal, below) and `U` (on and above the diagonal).
#[derive(Debug, Clone)]
pub struct LuFactors<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
    min_pivot: T,
}

impl<T: Real> LuFactors<T> {
    fn new(a: &DenseMatrix<T>) -> Result<Self> {
        if a.rows != a.cols {
            return Err(BemError::Dimension {
                expected: a.rows,
                got: a.cols,
            });
        }
        let n = a.rows;
        let floor = T::lit(PIVOT_FLOOR);
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = T::infinity();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|r| (r, lu[(r, k)].abs()))
                .fold((k, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
            min_pivot = min_pivot.min(pivot);
            if !(pivot >= floor) {
                return Err(BemError::SolveFailure {
                    pivot: pivot.to_f64_lossy(),
                    column: k,
                });
            }
            if p != k {
                for c in 0..n {
                    lu.data.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let diag = lu[(k, k)];
            for r in k + 1..n {
                let factor = lu[(r, k)] / diag;
                lu[(r, k)] = factor;
                if factor == T::zero() {
                    continue;
                }
                for c in k + 1..n {
                    let v = lu[(k, c)];
                    lu[(r, c)] = lu[(r, c)] - factor * v;
                }
            }
        }
        Ok(Self { lu, perm, min_pivot })
    }

    /// Smallest pivot magnitude met during elimination.
    pub fn min_pivot(&self) -> T {
        self.min_pivot
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let n = self.lu.rows;
        if rhs.len() != n {
            return Err(BemError::Dimension {
                expected: n,
                got: rhs.len(),
            });
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| rhs[p]).collect();
        for r in 0..n {
            let row = self.lu.row(r);
            let s: T = row[..r].iter().zip(&x[..r]).map(|(&a, &b)| a * b).sum();
            x[r] = x[r] - s;
        }
        for r in (0..n).rev() {
            let row = self.lu.row(r);
            let s: T = row[r + 1..].iter().zip(&x[r + 1..]).map(|(&a, &b)| a * b).sum();
            x[r] = (x[r] - s) / row[r];
        }
        Ok(x)
    }
}

/// `max |a_i − b_i|`.
pub fn max_abs_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).abs())
        .fold(T::zero(), T::max)
}

pub fn max_norm<T: Real>(v: &[T]) -> T {
    v.iter().map(|x| x.abs()).fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn solves_permuted_system() {
        // zero leading entry forces a row swap
        let a = DenseMatrix::from_row_major(
            3,
            3,
            vec![0.0, 2.0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 3.0],
        )
        .unwrap();
        let x = a.solve(&[7.0, 6.0, 13.0]).unwrap();
        for (got, want) in x.iter().zip([1.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn singular_matrix_reports_pivot() {
        let a = DenseMatrix::from_row_major(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        match a.lu() {
            Err(BemError::SolveFailure { pivot, column }) => {
                assert_eq!(column, 1);
                assert!(pivot < 1e-12);
            }
            other => panic!("expected solve failure, got {other:?}"),
        }
    }

    #[test]
    fn shape_checks() {
        assert!(DenseMatrix::<f64>::from_row_major(2, 2, vec![1.0; 3]).is_err());
        let rect = DenseMatrix::<f64>::zeros(2, 3);
        assert!(rect.lu().is_err());
        assert!(rect.mul_vec(&[1.0, 2.0]).is_err());
        let eye = DenseMatrix::from_row_major(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(eye.solve(&[1.0]).is_err());
    }

    proptest! {
        #[test]
        fn residual_is_small(
            n in 1usize..12,
            entries in prop::collection::vec(-1.0f64..1.0, 144),
            rhs in prop::collection::vec(-1.0f64..1.0, 12),
        ) {
            let mut data: Vec<f64> = entries[..n * n].to_vec();
            // diagonal dominance keeps the draw well conditioned
            for i in 0..n {
                data[i * n + i] += n as f64;
            }
            let a = DenseMatrix::from_row_major(n, n, data).unwrap();
            let b = &rhs[..n];
            let x = a.solve(b).unwrap();
            let r = a.mul_vec(&x).unwrap();
            prop_assert!(max_abs_diff(&r, b) <= 1e-12 * (1.0 + max_norm(b)));
        }
    }
}
