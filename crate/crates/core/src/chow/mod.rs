//! Chow rings presented by monomial relations and a top-degree valuation.
//!
//! This covers products of projective spaces (`L_i^{n_i + 1} = 0`), double
//! covers (doubled valuations) and blowups whose only nonzero top
//! intersection numbers are known explicitly.

mod parse;

pub use parse::parse_class;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("classes belong to different rings")]
    RingMismatch,
    #[error("class is not homogeneous")]
    Inhomogeneous,
    #[error("expected a class of degree {expected}, found degree {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("top self-intersection {0} is odd or negative, so it is not 2g - 2 for a curve")]
    BadTopValue(BigInt),
}

pub type Result<T> = std::result::Result<T, ChowError>;

/// Exponent vector of a monomial, one entry per variable.
pub type Monomial = Vec<u32>;

fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `Z[x_1..x_k] / (monomial relations, everything above degree dim)` with a
/// linear map from degree `dim` to `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowRing {
    vars: Vec<String>,
    dim: u32,
    relations: Vec<Monomial>,
    valuation: BTreeMap<Monomial, BigInt>,
}

impl ChowRing {
    pub fn new(
        vars: Vec<String>,
        dim: u32,
        relations: Vec<Monomial>,
        valuation: Vec<(Monomial, BigInt)>,
    ) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(ChowError::InvalidRing("no variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(ChowError::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(ChowError::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        let k = vars.len();
        for r in &relations {
            if r.len() != k {
                return Err(ChowError::InvalidRing(format!(
                    "relation {r:?} has {} exponents for {k} variables",
                    r.len()
                )));
            }
            if degree(r) == 0 || degree(r) > dim {
                return Err(ChowError::InvalidRing(format!("relation {r:?} must have degree in 1..={dim}")));
            }
        }
        let mut table = BTreeMap::new();
        for (m, v) in valuation {
            if m.len() != k {
                return Err(ChowError::InvalidRing(format!(
                    "valuation monomial {m:?} has {} exponents for {k} variables",
                    m.len()
                )));
            }
            if degree(&m) != dim {
                return Err(ChowError::InvalidRing(format!("valuation monomial {m:?} is not of degree {dim}")));
            }
            if !v.is_zero() && relations.iter().any(|r| divides(r, &m)) {
                return Err(ChowError::InvalidRing(format!(
                    "valuation monomial {m:?} is killed by a relation but has value {v}"
                )));
            }
            if table.insert(m.clone(), v).is_some() {
                return Err(ChowError::InvalidRing(format!("valuation monomial {m:?} listed twice")));
            }
        }
        table.retain(|_, v| !v.is_zero());
        Ok(Arc::new(Self { vars, dim, relations, valuation: table }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn vanishes(&self, m: &[u32]) -> bool {
        degree(m) > self.dim || self.relations.iter().any(|r| divides(r, m))
    }

    /// Valuation of a degree-`dim` monomial.
    pub fn value(&self, m: &[u32]) -> BigInt {
        self.valuation.get(m).cloned().unwrap_or_default()
    }
}

/// An element of a [`ChowRing`], always reduced modulo the relations.
#[derive(Debug, Clone)]
pub struct ChowClass {
    ring: Arc<ChowRing>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for ChowClass {}

impl ChowClass {
    pub fn zero(ring: &Arc<ChowRing>) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<ChowRing>, c: BigInt) -> Self {
        Self::from_terms(ring, [(vec![0; ring.vars.len()], c)])
    }

    pub fn var(ring: &Arc<ChowRing>, i: usize) -> Self {
        let mut m = vec![0; ring.vars.len()];
        m[i] = 1;
        Self::from_terms(ring, [(m, BigInt::one())])
    }

    /// Builds a class from raw terms, reducing modulo the relations.
    pub fn from_terms(ring: &Arc<ChowRing>, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.vars.len(), "monomial length");
            if c.is_zero() || ring.vanishes(&m) {
                continue;
            }
            *out.entry(m).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        Self { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a nonzero homogeneous class; `None` for zero.
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys().map(|m| degree(m));
        let Some(d) = it.next() else {
            return Ok(None);
        };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(ChowError::Inhomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(ChowError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let terms = self.terms.iter().chain(&other.terms).map(|(m, c)| (m.clone(), c.clone()));
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), c * k)))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                terms.push((m, ca * cb));
            }
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    /// `self^k` by repeated squaring.
    pub fn power(&self, mut k: u32) -> Self {
        let mut acc = Self::constant(&self.ring, BigInt::one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base).expect("same ring");
            }
        }
        acc
    }

    /// Terms in graded lexicographic order: higher degree first, and within
    /// a degree, larger exponents of earlier variables first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| degree(b).cmp(&degree(a)).then_with(|| b.cmp(a)));
        ts
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .zip(&self.ring.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Degree of the intersection of a top-degree class.
pub fn top_value(c: &ChowClass) -> Result<BigInt> {
    let n = c.ring.dim;
    match c.degree()? {
        None => Ok(BigInt::zero()),
        Some(d) if d == n => Ok(c.terms.iter().map(|(m, k)| k * c.ring.value(m)).sum()),
        Some(d) => Err(ChowError::WrongDegree { expected: n, found: d }),
    }
}

pub fn multiply(a: &ChowClass, b: &ChowClass) -> Result<ChowClass> {
    a.multiply(b)
}

pub fn power(a: &ChowClass, k: u32) -> ChowClass {
    a.power(k)
}

fn check_divisor(c: &ChowClass) -> Result<()> {
    match c.degree()? {
        Some(1) | None => Ok(()),
        Some(d) => Err(ChowError::WrongDegree { expected: 1, found: d }),
    }
}

/// Intersection matrix of the restrictions of `basis` to the surface cut out
/// by `n - 2` general members of `|H|`: entry `(i, j)` is
/// `L_i . L_j . H^{n-2}`.
pub fn fiber_gram(basis: &[ChowClass], h: &ChowClass) -> Result<IntMatrix> {
    check_divisor(h)?;
    let n = h.ring.dim;
    if n < 2 {
        return Err(ChowError::InvalidRing(format!("dimension {n} is below 2")));
    }
    let hp = h.power(n - 2);
    let k = basis.len();
    let mut g = IntMatrix::zeros(k, k);
    for i in 0..k {
        check_divisor(&basis[i])?;
        basis[i].same_ring(h)?;
        for j in i..k {
            let v = top_value(&basis[i].multiply(&basis[j])?.multiply(&hp)?)?;
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        }
    }
    Ok(g)
}

/// `H^{n-1}`: the class of the curve cut out by `n - 1` general members of
/// `|H|`.
pub fn base_curve_class(h: &ChowClass) -> Result<ChowClass> {
    check_divisor(h)?;
    let n = h.ring.dim;
    if n < 1 {
        return Err(ChowError::InvalidRing("dimension 0".into()));
    }
    Ok(h.power(n - 1))
}

/// Genus of the base curve of `|H|` when `-K = (n - 2) H`: adjunction gives
/// `2g - 2 = H^n`.
pub fn curve_genus(h: &ChowClass) -> Result<BigInt> {
    check_divisor(h)?;
    let top = top_value(&h.power(h.ring.dim))?;
    if top.is_negative() || top.is_odd() {
        return Err(ChowError::BadTopValue(top));
    }
    Ok(top / 2 + 1)
}
