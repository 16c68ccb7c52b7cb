use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Cone, ConeError, RayVec, Result};
use crate::linalg::{dot, is_zero_vec, primitive, primitive_from_rat, rank_of_rows, Rat, RatMatrix};

fn apply(m: &RatMatrix, v: &[BigInt]) -> Result<RayVec> {
    let vr: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
    Ok(primitive_from_rat(&m.mul_vec(&vr)?))
}

/// The dual cone `{y : <x, y> >= 0 for all x in c}` where
/// `<x, y> = x^T P y`. With `P` symmetric, `dual(dual(c, P), P) = c`; in
/// general the second dual needs `P^T`.
pub fn dual(c: &Cone, pairing: &RatMatrix) -> Result<Cone> {
    let n = c.ambient_dim();
    if pairing.rows() != n || pairing.cols() != n {
        return Err(ConeError::Dimension { expected: n, found: pairing.rows().max(pairing.cols()) });
    }
    if pairing.det()?.is_zero() {
        return Err(ConeError::SingularPairing);
    }
    let pt = pairing.transpose();
    let ineqs: Vec<RayVec> = c.rays().iter().map(|r| apply(&pt, r)).collect::<Result<_>>()?;
    let eqs: Vec<RayVec> = c.lineality().iter().map(|l| apply(&pt, l)).collect::<Result<_>>()?;
    Cone::from_constraints(n, &ineqs, &eqs)
}

/// Image of a cone under a surjective linear map `q` (an `m x n` matrix of
/// full row rank). Rays mapping to zero are dropped.
pub fn quotient_image(c: &Cone, q: &RatMatrix) -> Result<Cone> {
    let n = c.ambient_dim();
    if q.cols() != n {
        return Err(ConeError::Dimension { expected: n, found: q.cols() });
    }
    let rank = rank_of_rows(&q.to_rows(), n);
    if rank != q.rows() {
        return Err(ConeError::RankDeficient { rank, rows: q.rows() });
    }
    let m = q.rows();
    let rays: Vec<RayVec> = c
        .rays()
        .iter()
        .map(|r| apply(q, r))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|v| !is_zero_vec(v))
        .collect();
    let lin: Vec<RayVec> = c
        .lineality()
        .iter()
        .map(|l| apply(q, l))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|v| !is_zero_vec(v))
        .collect();
    Cone::from_generators(m, &rays, &lin)
}

/// Result of a coverage test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageVerdict {
    pub covered: bool,
    /// A point of the target lying in none of the pieces.
    pub witness: Option<RayVec>,
}

fn normalize_hyperplane(h: &[BigInt]) -> RayVec {
    let p = primitive(h);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.iter().map(|y| -y).collect(),
        _ => p,
    }
}

/// Whether `h` takes both signs on the relative interior of `cell`.
fn splits(cell: &Cone, h: &[BigInt]) -> bool {
    if cell.lineality().iter().any(|l| !dot(h, l).is_zero()) {
        return true;
    }
    let mut pos = false;
    let mut neg = false;
    for r in cell.rays() {
        let v = dot(h, r);
        pos |= v.is_positive();
        neg |= v.is_negative();
    }
    pos && neg
}

/// Decides whether `target` is contained in the union of `pieces`.
///
/// The target is cut recursively along the facet and equation hyperplanes of
/// the pieces. A cell contained in a single piece is covered; a cell that no
/// hyperplane splits is either inside some piece or meets none of them in
/// its relative interior, and then its interior point is the witness.
pub fn covers(target: &Cone, pieces: &[Cone]) -> Result<CoverageVerdict> {
    for p in pieces {
        target.check_dim(p.ambient_dim())?;
    }
    let mut hyperplanes: Vec<RayVec> = pieces
        .iter()
        .flat_map(|p| p.facets().iter().chain(p.equations()))
        .map(|h| normalize_hyperplane(h))
        .collect();
    hyperplanes.sort();
    hyperplanes.dedup();

    let mut stack = vec![target.clone()];
    while let Some(cell) = stack.pop() {
        let mut inside = false;
        for p in pieces {
            if p.contains_cone(&cell)? {
                inside = true;
                break;
            }
        }
        if inside {
            continue;
        }
        match hyperplanes.iter().find(|h| splits(&cell, h)) {
            Some(h) => {
                let neg: RayVec = h.iter().map(|x| -x).collect();
                // push the negative side first so the positive side is
                // explored first
                stack.push(cell.intersect_halfspace(&neg)?);
                stack.push(cell.intersect_halfspace(h)?);
            }
            None => {
                let point = cell.interior_point();
                let mut hit = false;
                for p in pieces {
                    if p.member(&point)? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    return Ok(CoverageVerdict { covered: false, witness: Some(point) });
                }
            }
        }
    }
    Ok(CoverageVerdict { covered: true, witness: None })
}
