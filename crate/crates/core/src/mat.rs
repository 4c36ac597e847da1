//! Small dense matrices over an exact ring.
//!
//! Row-major storage; shapes are explicit so zero-row/zero-column matrices
//! are first-class (a differential into or out of a zero module).

use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense `rows × cols` matrix. A differential of shape `ranks(n+1) × ranks(n)`
/// acts on column vectors of length `ranks(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_empty_shape(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Matrix with row `i` removed.
    pub fn drop_row(&self, i: usize) -> Mat<T> {
        Mat::from_fn(self.rows - 1, self.cols, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            self.at(rr, c).clone()
        })
    }

    /// Matrix with column `j` removed.
    pub fn drop_col(&self, j: usize) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols - 1, |r, c| {
            let cc = if c < j { c } else { c + 1 };
            self.at(r, cc).clone()
        })
    }

    /// Block-diagonal assembly of `self` and `other`.
    pub fn block_diag(&self, other: &Mat<T>) -> Mat<T> {
        Mat::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.at(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.at(i - self.rows, j - self.cols).clone()
            } else {
                T::zero()
            }
        })
    }

    /// Assembles a matrix from a grid of blocks; `block(i, j)` must have
    /// shape `row_sizes[i] × col_sizes[j]`.
    pub fn from_blocks<F: Fn(usize, usize) -> Mat<T>>(
        row_sizes: &[usize],
        col_sizes: &[usize],
        block: F,
    ) -> Self {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Mat::zeros(rows, cols);
        let mut roff = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut coff = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                let b = block(bi, bj);
                assert_eq!((b.rows, b.cols), (rs, cs), "block shape mismatch at ({bi},{bj})");
                for i in 0..rs {
                    for j in 0..cs {
                        out.set(roff + i, coff + j, b.at(i, j).clone());
                    }
                }
                coff += cs;
            }
            roff += rs;
        }
        out
    }

    pub fn map<U: Clone + Zero, F: Fn(&T) -> U>(&self, f: F) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let prod = self.at(i, k) * other.at(k, j);
                acc = acc + &prod;
            }
            acc
        })
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let prod = self.at(i, k) * &v[k];
                    acc = acc + &prod;
                }
                acc
            })
            .collect()
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T> + for<'a> Sub<&'a T, Output = T>,
{
    pub fn add_mat(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() + other.at(i, j))
    }

    pub fn sub_mat(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() - other.at(i, j))
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Mat<T> {
    pub fn neg_mat(&self) -> Mat<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: Clone + Zero + num_traits::One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scalar(n: usize, c: T) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { c.clone() } else { T::zero() })
    }
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: Vec<Vec<i64>>) -> Mat<BigInt> {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    #[test]
    fn matmul_basic() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        let b = m(vec![vec![5, 6], vec![7, 8]]);
        assert_eq!(a.matmul(&b), m(vec![vec![19, 22], vec![43, 50]]));
    }

    #[test]
    fn empty_shapes_compose() {
        let a: Mat<BigInt> = Mat::zeros(0, 3);
        let b: Mat<BigInt> = Mat::zeros(3, 2);
        let c = a.matmul(&b);
        assert_eq!((c.rows, c.cols), (0, 2));
    }

    #[test]
    fn drop_row_col() {
        let a = m(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(a.drop_row(1), m(vec![vec![1, 2, 3], vec![7, 8, 9]]));
        assert_eq!(a.drop_col(0), m(vec![vec![2, 3], vec![5, 6], vec![8, 9]]));
    }

    #[test]
    fn blocks_roundtrip() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        let b = m(vec![vec![5], vec![6]]);
        let big = Mat::from_blocks(&[2], &[2, 1], |_, j| if j == 0 { a.clone() } else { b.clone() });
        assert_eq!(big, m(vec![vec![1, 2, 5], vec![3, 4, 6]]));
    }
}
