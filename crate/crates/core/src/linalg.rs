//! Dense matrices over a [`Scalar`] and fraction-free rank.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, T::from_i64(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// Rank by Bareiss elimination to row echelon form.
    ///
    /// Every intermediate entry is a minor of the input, so the division by
    /// the previous pivot is exact in any integral domain.
    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        let mut prev = T::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot_row) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != rank {
                for j in 0..self.cols {
                    self.data
                        .swap(pivot_row * self.cols + j, rank * self.cols + j);
                }
            }
            let pivot = self.get(rank, col).clone();
            for r in rank + 1..self.rows {
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = (pivot.clone() * self.get(r, j).clone()
                        - factor.clone() * self.get(rank, j).clone())
                        / prev.clone();
                    self.set(r, j, v);
                }
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }
}
