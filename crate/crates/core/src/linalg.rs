//! Dense matrices over a [`Field`] with Gaussian elimination.

use std::ops::{Index, IndexMut};

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Principal-style submatrix with the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// LU factorization with row pivoting.
    pub fn lu(&self) -> Lu<T> {
        assert_eq!(self.rows, self.cols, "LU of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0usize;
        let mut singular = false;
        for k in 0..n {
            let mut best = k;
            let mut best_score = a[(k, k)].pivot_score();
            for i in (k + 1)..n {
                let s = a[(i, k)].pivot_score();
                if s > best_score {
                    best = i;
                    best_score = s;
                }
            }
            if best_score == 0.0 {
                singular = true;
                continue;
            }
            if best != k {
                a.swap_rows(best, k);
                perm.swap(best, k);
                sign_flips += 1;
            }
            let pivot = a[(k, k)].clone();
            for i in (k + 1)..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let factor = a[(i, k)].clone() / pivot.clone();
                for j in (k + 1)..n {
                    let t = factor.clone() * a[(k, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                }
                a[(i, k)] = factor;
            }
        }
        Lu {
            lu: a,
            perm,
            odd: sign_flips % 2 == 1,
            singular,
        }
    }

    pub fn det(&self) -> T {
        self.lu().det()
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<T>> {
        let lu = self.lu();
        if lu.singular {
            return None;
        }
        let n = self.rows;
        let mut inv = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            let x = lu.solve(&e);
            for i in 0..n {
                inv[(i, j)] = x[i].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Packed LU factors `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    odd: bool,
    singular: bool,
}

impl<T: Field> Lu<T> {
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> T {
        if self.singular {
            return T::zero();
        }
        let mut d = T::one();
        for i in 0..self.lu.rows {
            d = d * self.lu[(i, i)].clone();
        }
        if self.odd {
            -d
        } else {
            d
        }
    }

    /// Solves `A x = b`. The factorization must be nonsingular.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        assert!(!self.singular, "solve with a singular factorization");
        let n = self.lu.rows;
        let mut y: Vec<T> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            let mut acc = y[i].clone();
            for k in 0..i {
                acc = acc - self.lu[(i, k)].clone() * y[k].clone();
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i].clone();
            for k in (i + 1)..n {
                acc = acc - self.lu[(i, k)].clone() * y[k].clone();
            }
            y[i] = acc / self.lu[(i, i)].clone();
        }
        y
    }
}
