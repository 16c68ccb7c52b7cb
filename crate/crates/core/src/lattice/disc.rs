use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{is_isometry, IntLattice, LatticeError, Result};
use crate::linalg::{rat_from_int, snf, IntMatrix, Rat};

/// The discriminant group `L*/L = ⊕ Z/d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscGroup {
    /// Invariant factors `d_i >= 2`, each dividing the next.
    pub factors: Vec<BigInt>,
    /// Representatives in `L*` of the cyclic generators, in lattice
    /// coordinates.
    pub generators: Vec<Vec<Rat>>,
    pub order: BigInt,
    // L* -> ⊕ Z/d_i is y -> (D V^-1 y) restricted to `nontrivial`
    coords: IntMatrix,
    nontrivial: Vec<usize>,
}

impl DiscGroup {
    /// Coordinates of `y in L*` with respect to the generators, reduced
    /// modulo the factors.
    pub fn coordinates(&self, y: &[Rat]) -> Vec<BigInt> {
        self.nontrivial
            .iter()
            .zip(&self.factors)
            .map(|(&i, d)| {
                let c = self
                    .coords
                    .row(i)
                    .iter()
                    .zip(y)
                    .fold(Rat::zero(), |acc, (a, b)| acc + rat_from_int(a) * b);
                debug_assert!(c.is_integer());
                c.to_integer().mod_floor(d)
            })
            .collect()
    }
}

/// Computes `L*/L` from the Smith normal form of the Gram matrix.
///
/// With `U G V = D`, the dual lattice is `V D^-1 Z^n`, so the generators are
/// the columns of `V` divided by the invariant factors.
pub fn discriminant_group(l: &IntLattice) -> DiscGroup {
    let s = snf(l.gram());
    let v_inv = s.right.unimodular_inverse().expect("snf transforms are unimodular");
    let n = l.rank();
    let coords = IntMatrix::diagonal(n, n, &s.diag).checked_mul(&v_inv).expect("square");
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    let mut nontrivial = Vec::new();
    for (i, d) in s.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let dr = rat_from_int(d);
        generators.push(s.right.col(i).iter().map(|x| rat_from_int(x) / &dr).collect());
        factors.push(d.clone());
        nontrivial.push(i);
    }
    let order = factors.iter().product();
    DiscGroup { factors, generators, order, coords, nontrivial }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DiscActionKind {
    PlusId,
    MinusId,
    Other,
}

impl fmt::Display for DiscActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscActionKind::PlusId => "+Id",
            DiscActionKind::MinusId => "-Id",
            DiscActionKind::Other => "other",
        })
    }
}

/// Action of an isometry on `L*/L`: column `i` holds the coordinates of the
/// image of generator `i`, row `j` reduced modulo factor `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscAction {
    pub matrix: IntMatrix,
    pub kind: DiscActionKind,
}

fn classify(matrix: &IntMatrix, factors: &[BigInt]) -> DiscActionKind {
    let is_scalar = |s: i64| {
        (0..factors.len()).all(|j| {
            (0..factors.len()).all(|i| {
                let want = if i == j { BigInt::from(s) } else { BigInt::zero() };
                (&matrix[(j, i)] - want).mod_floor(&factors[j]).is_zero()
            })
        })
    };
    if is_scalar(1) {
        DiscActionKind::PlusId
    } else if is_scalar(-1) {
        DiscActionKind::MinusId
    } else {
        DiscActionKind::Other
    }
}

fn action_matrix(group: &DiscGroup, m: &IntMatrix) -> IntMatrix {
    let k = group.factors.len();
    let mut out = IntMatrix::zeros(k, k);
    let mr = m.to_rat();
    for (i, g) in group.generators.iter().enumerate() {
        let image = mr.mul_vec(g).expect("sizes match");
        for (j, c) in group.coordinates(&image).into_iter().enumerate() {
            out[(j, i)] = c;
        }
    }
    out
}

fn compose(a: &IntMatrix, b: &IntMatrix, factors: &[BigInt]) -> IntMatrix {
    let mut p = a * b;
    for (j, d) in factors.iter().enumerate() {
        for i in 0..p.cols() {
            p[(j, i)] = p[(j, i)].mod_floor(d);
        }
    }
    p
}

/// How an isometry acts on the discriminant group. When `+Id` and `-Id`
/// coincide (exponent at most 2) the action is reported as `+Id`.
pub fn disc_action(l: &IntLattice, m: &IntMatrix) -> Result<DiscAction> {
    if !is_isometry(l, m)? {
        return Err(LatticeError::NotIsometry);
    }
    let group = discriminant_group(l);
    let matrix = action_matrix(&group, m);
    let kind = classify(&matrix, &group.factors);
    Ok(DiscAction { matrix, kind })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorelliKind {
    /// Preserves the nodal classes and acts by `±Id` on `L*/L`.
    Induces,
    /// Preserves the nodal classes; `M^exponent` is the least power acting
    /// trivially on `L*/L`.
    PowerInduces { exponent: u64 },
    Fails(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorelliVerdict {
    pub kind: TorelliKind,
    pub disc_action: DiscActionKind,
}

impl fmt::Display for TorelliVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TorelliKind::Induces => write!(f, "induces (acts by {})", self.disc_action),
            TorelliKind::PowerInduces { exponent } => {
                write!(f, "power {exponent} induces (acts by {})", self.disc_action)
            }
            TorelliKind::Fails(reason) => write!(f, "fails: {reason}"),
        }
    }
}

/// Lattice-side Torelli test for an isometry: the nodal classes must be
/// permuted (as a set of vectors, signs included) and the discriminant
/// action must be `±Id`, or else some power of it must be.
pub fn torelli_check(l: &IntLattice, m: &IntMatrix, nodal: &[Vec<BigInt>]) -> Result<TorelliVerdict> {
    let action = disc_action(l, m)?;
    let set: BTreeSet<&Vec<BigInt>> = nodal.iter().collect();
    for v in nodal {
        l.check_len(v)?;
        let image = m.mul_vec(v)?;
        if !set.contains(&image) {
            let shown: Vec<String> = image.iter().map(ToString::to_string).collect();
            let orig: Vec<String> = v.iter().map(ToString::to_string).collect();
            return Ok(TorelliVerdict {
                kind: TorelliKind::Fails(format!(
                    "nodal class ({}) maps to ({}), which is not in the nodal set",
                    orig.join(","),
                    shown.join(",")
                )),
                disc_action: action.kind,
            });
        }
    }
    let kind = match action.kind {
        DiscActionKind::PlusId | DiscActionKind::MinusId => TorelliKind::Induces,
        DiscActionKind::Other => {
            let factors = discriminant_group(l).factors;
            let mut power = action.matrix.clone();
            let mut exponent = 1u64;
            // the action lies in a finite group, so this terminates
            while classify(&power, &factors) != DiscActionKind::PlusId {
                power = compose(&power, &action.matrix, &factors);
                exponent += 1;
            }
            TorelliKind::PowerInduces { exponent }
        }
    };
    Ok(TorelliVerdict { kind, disc_action: action.kind })
}
