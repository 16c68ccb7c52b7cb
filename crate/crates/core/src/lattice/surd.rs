use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntLattice, LatticeError, Result};
use crate::linalg::{rat_from_int, sign, Rat};

/// A real number `a + b sqrt(d)` with rational `a`, `b` and squarefree
/// `d >= 1`. Rationals are stored with `b = 0, d = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: Rat,
    b: Rat,
    d: BigInt,
}

impl QuadSurd {
    pub fn rational(a: Rat) -> Self {
        Self { a, b: Rat::zero(), d: BigInt::one() }
    }

    /// `a + b sqrt(d)`; `d` must be squarefree and positive.
    pub fn new(a: Rat, b: Rat, d: BigInt) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        debug_assert_eq!(squarefree_part(&d).1, d, "radicand must be squarefree");
        if d.is_one() {
            return Self::rational(a + b);
        }
        if b.is_zero() {
            return Self::rational(a);
        }
        Self { a, b, d }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(LatticeError::SurdMismatch(self.d.clone(), other.d.clone())),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.radicand(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.radicand(other)?;
        let dr = rat_from_int(&d);
        Ok(Self::new(
            &self.a * &other.a + &self.b * &other.b * dr,
            &self.a * &other.b + &self.b * &other.a,
            d,
        ))
    }

    /// Sign of the real number, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * rat_from_int(&self.d);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl std::ops::Neg for &QuadSurd {
    type Output = QuadSurd;

    fn neg(self) -> QuadSurd {
        QuadSurd { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.try_sub(other).ok()?;
        Some(diff.signum().cmp(&0))
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let root = if self.b.abs().is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b.abs(), self.d)
        };
        let op = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{root}")
            } else {
                write!(f, "{root}")
            }
        } else {
            write!(f, "{} {op} {root}", self.a)
        }
    }
}

/// Splits `n > 0` as `k^2 * s` with `s` squarefree; returns `(k, s)`.
pub(crate) fn squarefree_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut s = BigInt::one();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= &p;
        }
        p += 1;
    }
    s *= rest;
    (k, s)
}

/// Slope `a/b` of a boundary ray `a e_1 + b e_2` of the positive cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(QuadSurd),
    /// The ray `e_1` itself (`b = 0`).
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(s) => write!(f, "{s}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

/// The two isotropic directions of an indefinite rank-2 form
/// `q(a, b) = p a^2 + 2 r ab + s b^2`, as slopes `t = a/b`. Finite roots come
/// in ascending order, followed by `Infinite` when `p = 0`.
pub fn positive_cone_boundary(l: &IntLattice) -> Result<(Slope, Slope)> {
    if l.rank() != 2 {
        return Err(LatticeError::NotRankTwo(l.rank()));
    }
    let det = l.det();
    if !det.is_negative() {
        return Err(LatticeError::NotIndefinite(det));
    }
    let g = l.gram();
    let (p, r, s) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 1)]);
    if p.is_zero() {
        // q = b (2 r a + s b); r != 0 since det = -r^2 < 0
        let t = Rat::new(-s, BigInt::from(2) * r);
        return Ok((Slope::Finite(QuadSurd::rational(t)), Slope::Infinite));
    }
    // t = (-r ± sqrt(r^2 - p s)) / p
    let disc = -det;
    let (k, d) = squarefree_part(&disc);
    let pr = rat_from_int(p);
    let a = -rat_from_int(r) / &pr;
    let b = (rat_from_int(&k) / &pr).abs();
    let lo = QuadSurd::new(a.clone(), -b.clone(), d.clone());
    let hi = QuadSurd::new(a, b, d);
    Ok((Slope::Finite(lo), Slope::Finite(hi)))
}

/// `q(t, 1)` for a finite slope, or `q(1, 0)` for the infinite one.
pub fn evaluate_at_slope(l: &IntLattice, slope: &Slope) -> Result<QuadSurd> {
    let g = l.gram();
    let q = |x: &BigInt| QuadSurd::rational(rat_from_int(x));
    match slope {
        Slope::Infinite => Ok(q(&g[(0, 0)])),
        Slope::Finite(t) => {
            let t2 = t.try_mul(t)?;
            let two_r = q(&(BigInt::from(2) * &g[(0, 1)]));
            q(&g[(0, 0)]).try_mul(&t2)?.try_add(&two_r.try_mul(t)?)?.try_add(&q(&g[(1, 1)]))
        }
    }
}
