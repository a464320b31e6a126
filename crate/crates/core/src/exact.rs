//! Dense matrices over an exact field.
//!
//! The scalar is generic; the crate root fixes [`crate::Rational`] and
//! [`crate::SmallRational`] as the two instantiations in use. Floating point
//! types are deliberately not [`ExactField`]s.

use std::fmt;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A field with exact arithmetic.
pub trait ExactField: Num + Clone + Neg<Output = Self> + fmt::Debug {
    fn from_int(v: i64) -> Self;
}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Integer + Signed + fmt::Debug + From<i64>,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: ExactField> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = F::one() / self.get(r, c).clone();
            for k in c..self.cols {
                let v = self.get(r, k).clone() * inv.clone();
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for k in c..self.cols {
                    if self.get(r, k).is_zero() {
                        continue;
                    }
                    let v = self.get(i, k).clone() - factor.clone() * self.get(r, k).clone();
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Dimension of the kernel of the map `F^cols -> F^rows`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|fc| {
            let mut v = vec![F::zero(); self.cols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, fc).clone();
            }
            v
        })
        .collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Determinant by elimination. Panics on a non-square matrix.
    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone() / pivot.clone();
                for k in c..m.cols {
                    let v = m.get(i, k).clone() - factor.clone() * m.get(c, k).clone();
                    m.set(i, k, v);
                }
            }
        }
        det
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in 0..self.rows {
            list.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        list.finish()
    }
}
