//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the crate. Matrices are small (rank at most
//! ten or so in every computation we do), so the algorithms favour
//! simplicity over asymptotics.

mod matrix;
mod snf;

pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use snf::{snf, SmithForm};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational scalar. Always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry count {found} does not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("matrix has no rows")]
    Empty,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

/// Integer vector from machine integers.
pub fn ivec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn gcd_of(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_zero_vec(xs: &[BigInt]) -> bool {
    xs.iter().all(Zero::is_zero)
}

/// Divides out the gcd, keeping the direction. The zero vector is returned
/// unchanged.
pub fn primitive(xs: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_of(xs);
    if g.is_zero() || g.is_one() {
        return xs.to_vec();
    }
    xs.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and returns the primitive
/// integer vector pointing the same way.
pub fn primitive_from_rat(xs: &[Rat]) -> Vec<BigInt> {
    let l = xs
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = xs
        .iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&scaled)
}

/// Reduced row echelon form of a list of rational row vectors. Returns the
/// nonzero rows and the pivot columns.
pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_of_rows(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn int_rows_to_rat(rows: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(rat_from_int).collect())
        .collect()
}

/// Rank of a set of integer row vectors of length `ncols`.
pub fn int_rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    rank_of_rows(&int_rows_to_rat(rows), ncols)
}

/// Basis of `{x : row . x = 0 for every row}`, as primitive integer vectors in
/// a canonical (reduced echelon) form.
pub fn int_nullspace(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let (r, pivots) = rref(&int_rows_to_rat(rows), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[f].clone();
        }
        basis.push(primitive_from_rat(&v));
    }
    basis
}

/// Canonical integer basis for the row span of `rows`: the reduced echelon
/// rows, each scaled to a primitive integer vector.
pub fn canonical_span(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let (r, _) = rref(&int_rows_to_rat(rows), ncols);
    r.iter().map(|row| primitive_from_rat(row)).collect()
}

/// Characteristic polynomial `det(tI - M)` of a square integer matrix,
/// highest degree first (so the leading coefficient is 1).
///
/// Uses the Faddeev-LeVerrier recursion; every division in it is exact over
/// the integers.
pub fn char_poly(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::one();
    let id = IntMatrix::identity(n);
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&coeffs[k - 1]);
        let t = (m * &mk).trace();
        let kk = BigInt::from(k);
        debug_assert!((&t % &kk).is_zero());
        coeffs[k] = -(t / kk);
    }
    Ok(coeffs)
}

/// Evaluates a polynomial (highest degree first) at a square matrix.
pub fn eval_poly_at(coeffs: &[BigInt], m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for c in coeffs {
        acc = &(&acc * m) + &IntMatrix::identity(n).scale(c);
    }
    acc
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
