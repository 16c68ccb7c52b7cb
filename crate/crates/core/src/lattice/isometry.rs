use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntLattice, LatticeError, Result};
use crate::linalg::IntMatrix;

/// Whether `M^T G M = G`, i.e. `M` (acting on column vectors) preserves the
/// form.
pub fn is_isometry(l: &IntLattice, m: &IntMatrix) -> Result<bool> {
    l.check_square(m)?;
    Ok(&(&m.transpose() * l.gram()) * m == *l.gram())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderVerdict {
    Finite(u64),
    Infinite,
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderVerdict::Finite(k) => write!(f, "finite order {k}"),
            OrderVerdict::Infinite => write!(f, "infinite order"),
        }
    }
}

fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// `lcm { m : phi(m) <= n }`. An `n x n` integer matrix has finite order iff
/// its order divides this number.
pub fn finite_order_bound(n: usize) -> BigInt {
    let n = n as u64;
    // phi(m) >= sqrt(m / 2), so every such m is at most 2 n^2
    let top = 2 * n * n + 2;
    (1..=top)
        .filter(|&m| totient(m) <= n)
        .fold(BigInt::one(), |acc, m| acc.lcm(&BigInt::from(m)))
}

/// Order of a unimodular integer matrix.
pub fn element_order(m: &IntMatrix) -> Result<OrderVerdict> {
    if !m.is_square() {
        return Err(crate::linalg::LinalgError::NotSquare { rows: m.rows(), cols: m.cols() }.into());
    }
    let det = m.det()?;
    if det.abs() != BigInt::one() {
        return Err(LatticeError::NotUnimodular(det));
    }
    let bound = finite_order_bound(m.rows());
    let bound_u64: u64 = bound.clone().try_into().expect("order bound fits in u64");
    if !m.pow(bound_u64)?.is_identity() {
        return Ok(OrderVerdict::Infinite);
    }
    // the order is the least divisor of the bound that kills m
    let mut power = IntMatrix::identity(m.rows());
    for k in 1..=bound_u64 {
        power = &power * m;
        if bound_u64.is_multiple_of(k) && power.is_identity() {
            return Ok(OrderVerdict::Finite(k));
        }
    }
    unreachable!("m^bound is the identity")
}

/// The Eichler-type transvection attached to an isotropic vector `f` and a
/// vector `y` orthogonal to it:
///
/// `x -> x + (x.f) y - ((x.y) + (x.f)(y.y)/2) f`.
///
/// Column `k` of the result is the image of the basis vector `e_k`.
pub fn translation_isometry(l: &IntLattice, f: &[BigInt], y: &[BigInt]) -> Result<IntMatrix> {
    let ff = l.form(f, f)?;
    if !ff.is_zero() {
        return Err(LatticeError::NotIsotropic(ff));
    }
    let fy = l.form(f, y)?;
    if !fy.is_zero() {
        return Err(LatticeError::NotOrthogonal(fy));
    }
    let yy = l.form(y, y)?;
    if yy.is_odd() {
        return Err(LatticeError::OddNorm(yy));
    }
    let half = &yy / 2;
    let n = l.rank();
    let gf = l.gram().mul_vec(f)?;
    let gy = l.gram().mul_vec(y)?;
    let mut t = IntMatrix::identity(n);
    for k in 0..n {
        let ef = &gf[k];
        let mk = -&gy[k] - ef * &half;
        for i in 0..n {
            t[(i, k)] += ef * &y[i] + &mk * &f[i];
        }
    }
    debug_assert!(is_isometry(l, &t).unwrap_or(false));
    Ok(t)
}
