//! Integer lattices with a symmetric bilinear form.
//!
//! The lattices here are Picard lattices of K3 surfaces, so they are small
//! (rank two to four), even, and usually indefinite.

mod disc;
mod isometry;
mod surd;

pub use disc::{disc_action, discriminant_group, torelli_check, DiscAction, DiscActionKind, DiscGroup, TorelliKind, TorelliVerdict};
pub use isometry::{element_order, finite_order_bound, is_isometry, translation_isometry, OrderVerdict};
pub use surd::{evaluate_at_slope, positive_cone_boundary, QuadSurd, Slope};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{gcd_of, IntMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate (det = 0)")]
    Degenerate,
    #[error("expected a vector or matrix of size {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,
    #[error("matrix is not invertible over the integers (det = {0})")]
    NotUnimodular(BigInt),
    #[error("operation needs a rank-2 lattice, got rank {0}")]
    NotRankTwo(usize),
    #[error("form is not indefinite (det = {0})")]
    NotIndefinite(BigInt),
    #[error("f is not isotropic (f.f = {0})")]
    NotIsotropic(BigInt),
    #[error("y is not orthogonal to f (f.y = {0})")]
    NotOrthogonal(BigInt),
    #[error("y.y = {0} is odd")]
    OddNorm(BigInt),
    #[error("surds with different radicands {0} and {1}")]
    SurdMismatch(BigInt, BigInt),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// A free abelian group with an integral symmetric bilinear form, given by
/// its Gram matrix in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    gram: IntMatrix,
    even: bool,
}

impl IntLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(LinalgError::NotSquare { rows: gram.rows(), cols: gram.cols() }.into());
        }
        if gram.rows() == 0 {
            return Err(LinalgError::Empty.into());
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let even = (0..gram.rows()).all(|i| gram[(i, i)].is_even());
        Ok(Self { gram, even })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("gram is square")
    }

    pub(crate) fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(LatticeError::Dimension { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    pub(crate) fn check_square(&self, m: &IntMatrix) -> Result<()> {
        if m.rows() != self.rank() || m.cols() != self.rank() {
            return Err(LatticeError::Dimension {
                expected: self.rank(),
                found: if m.rows() != self.rank() { m.rows() } else { m.cols() },
            });
        }
        Ok(())
    }

    /// `x^T G y`.
    pub fn form(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_len(x)?;
        self.check_len(y)?;
        let gy = self.gram.mul_vec(y)?;
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self, x: &[BigInt]) -> Result<BigInt> {
        self.form(x, x)
    }

    /// Gram entries as `i128` when they are small enough for fast box and
    /// residue enumeration.
    fn small_gram(&self) -> Option<Vec<Vec<i128>>> {
        let limit = 1i128 << 62;
        self.gram
            .row_iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i128().filter(|v| v.abs() < limit))
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }
}

/// `x^T G y` for the lattice `l`.
pub fn eval_form(l: &IntLattice, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
    l.form(x, y)
}

fn small_norm(g: &[Vec<i128>], v: &[i64]) -> i128 {
    let n = v.len();
    let mut acc = 0i128;
    for i in 0..n {
        let vi = v[i] as i128;
        if vi == 0 {
            continue;
        }
        acc += g[i][i] * vi * vi;
        for j in i + 1..n {
            acc += 2 * g[i][j] * vi * v[j] as i128;
        }
    }
    acc
}

/// Advances an odometer over `[lo, hi]^n`; returns false once it wraps.
fn step(v: &mut [i64], lo: i64, hi: i64) -> bool {
    for x in v.iter_mut() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// All primitive vectors `v` with every coordinate in `[-bound, bound]` and
/// `v.v = norm`, sorted lexicographically. The search is a plain box
/// enumeration, so for indefinite forms it only ever answers "within the
/// box".
pub fn find_norm_vectors(l: &IntLattice, norm: &BigInt, bound: u32) -> Vec<Vec<BigInt>> {
    let n = l.rank();
    let b = bound as i64;
    if b == 0 {
        return Vec::new();
    }
    let small = l.small_gram().filter(|_| bound <= 1 << 16 && n <= 64);
    let target = norm.to_i128();
    let mut out = Vec::new();
    let mut v = vec![-b; n];
    loop {
        if v.iter().any(|&x| x != 0) {
            let hit = match (&small, target) {
                (Some(g), Some(t)) => small_norm(g, &v) == t,
                (Some(_), None) => false,
                (None, _) => {
                    let bv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                    l.norm(&bv).expect("length matches") == *norm
                }
            };
            if hit {
                let bv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                if gcd_of(&bv) == BigInt::from(1) {
                    out.push(bv);
                }
            }
        }
        if !step(&mut v, -b, b) {
            break;
        }
    }
    out.sort();
    out
}

/// Whether `v.v` avoids `norm` modulo `m` for every residue vector `v`.
pub fn certifies_modulus(l: &IntLattice, norm: &BigInt, m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let n = l.rank();
    let mb = BigInt::from(m);
    let target = norm.mod_floor(&mb);
    let g: Vec<Vec<BigInt>> = l.gram.row_iter().map(|r| r.iter().map(|x| x.mod_floor(&mb)).collect()).collect();
    let g: Vec<Vec<i128>> = g.iter().map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect()).collect();
    let t = target.to_i128().unwrap();
    let mi = m as i128;
    let Ok(hi) = i64::try_from(m - 1) else {
        return false;
    };
    let mut v = vec![0i64; n];
    loop {
        let mut acc = 0i128;
        for i in 0..n {
            let vi = v[i] as i128;
            if vi == 0 {
                continue;
            }
            acc = (acc + g[i][i] * vi % mi * vi) % mi;
            for j in i + 1..n {
                acc = (acc + 2 * g[i][j] * vi % mi * v[j] as i128) % mi;
            }
        }
        if acc == t {
            return false;
        }
        if !step(&mut v, 0, hi) {
            return true;
        }
    }
}

/// Smallest modulus `2 <= m <= max_modulus` such that no lattice vector has
/// `v.v ≡ norm (mod m)`, which proves there is no vector of that norm at
/// all. `None` means no such modulus exists in range.
pub fn certify_no_norm(l: &IntLattice, norm: &BigInt, max_modulus: u64) -> Option<u64> {
    (2..=max_modulus).find(|&m| certifies_modulus(l, norm, m))
}
