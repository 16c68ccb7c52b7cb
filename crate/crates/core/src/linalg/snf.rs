use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `left * A * right = diag(diag)` with unimodular
/// `left` and `right` and `diag[i] | diag[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// The (rectangular) diagonal matrix `left * A * right`.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.left.rows(), self.right.cols(), &self.diag)
    }
}

struct Reducer {
    a: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
    }

    /// row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.left] {
            for c in 0..m.cols() {
                let t = q * &m[(j, c)];
                m[(i, c)] -= t;
            }
        }
    }

    /// col_i -= q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.right] {
            for r in 0..m.rows() {
                let t = q * &m[(r, j)];
                m[(r, i)] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.left] {
            for c in 0..m.cols() {
                let v = -m[(i, c)].clone();
                m[(i, c)] = v;
            }
        }
    }

    /// Position of the entry with smallest nonzero absolute value in the
    /// trailing block starting at `(t, t)`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn reduce_at(&mut self, t: usize) -> bool {
        let Some((pi, pj)) = self.min_pivot(t) else {
            return false;
        };
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            let p = self.a[(t, t)].clone();
            for i in t + 1..self.a.rows() {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&p);
                self.row_axpy(i, t, &q);
                if !self.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.a.cols() {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&p);
                self.col_axpy(j, t, &q);
                if !self.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot; move it in
                let (pi, pj) = self.min_pivot_in_cross(t);
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                continue;
            }
            // row and column are clear; enforce divisibility of the block
            let bad = (t + 1..self.a.rows()).find_map(|i| {
                (t + 1..self.a.cols())
                    .find(|&j| !(&self.a[(i, j)] % &p).is_zero())
                    .map(|_| i)
            });
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    self.row_axpy(t, i, &one);
                }
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.negate_row(t);
        }
        true
    }

    fn min_pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = ((t, t), self.a[(t, t)].abs());
        for i in t + 1..self.a.rows() {
            let v = self.a[(i, t)].abs();
            if !v.is_zero() && v < best.1 {
                best = ((i, t), v);
            }
        }
        for j in t + 1..self.a.cols() {
            let v = self.a[(t, j)].abs();
            if !v.is_zero() && v < best.1 {
                best = ((t, j), v);
            }
        }
        best.0
    }
}

/// Smith normal form by elementary row and column operations, always pivoting
/// on the entry of least nonzero absolute value.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: a.clone(),
        left: IntMatrix::identity(a.rows()),
        right: IntMatrix::identity(a.cols()),
    };
    let k = a.rows().min(a.cols());
    for t in 0..k {
        if !r.reduce_at(t) {
            break;
        }
    }
    let diag = (0..k).map(|i| r.a[(i, i)].clone()).collect();
    SmithForm { diag, left: r.left, right: r.right }
}
