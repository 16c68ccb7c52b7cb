//! Double description method.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{
    canonical_span, dot, int_nullspace, int_rank, int_rows_to_rat, is_zero_vec, primitive, primitive_from_rat,
    RatMatrix,
};

/// Extreme rays and lineality space of `{x : a.x >= 0 (a in ineqs), e.x = 0
/// (e in eqs)}`.
///
/// The rays are returned primitive, sorted, and lying in the orthogonal
/// complement of the lineality space; the lineality basis is in reduced
/// echelon form. Calling this on the rays and lineality of a cone gives its
/// facets and equations, because those are the rays and lineality of the
/// dual cone.
pub(crate) fn double_description(
    dim: usize,
    ineqs: &[Vec<BigInt>],
    eqs: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let all: Vec<Vec<BigInt>> = ineqs.iter().chain(eqs).cloned().collect();
    let lineality = canonical_span(&int_nullspace(&all, dim), dim);

    // W = eqs^⊥ ∩ lineality^⊥, where the cone is pointed
    let w_constraints: Vec<Vec<BigInt>> = eqs.iter().chain(&lineality).cloned().collect();
    let basis = int_nullspace(&w_constraints, dim);
    let w = basis.len();

    let mut local: Vec<Vec<BigInt>> = ineqs
        .iter()
        .map(|a| primitive(&basis.iter().map(|p| dot(a, p)).collect::<Vec<_>>()))
        .filter(|a| !is_zero_vec(a))
        .collect();
    local.sort();
    local.dedup();

    let mut rays: Vec<Vec<BigInt>> = pointed_rays(&local, w)
        .into_iter()
        .map(|z| {
            let mut x = vec![BigInt::zero(); dim];
            for (zi, p) in z.iter().zip(&basis) {
                for (xj, pj) in x.iter_mut().zip(p) {
                    *xj += zi * pj;
                }
            }
            primitive(&x)
        })
        .collect();
    rays.sort();
    rays.dedup();
    (rays, lineality)
}

/// Extreme rays of the pointed cone `{z in Q^w : a.z >= 0}`, where the rows
/// have full rank `w` (or there are none and `w = 0`).
fn pointed_rays(rows: &[Vec<BigInt>], w: usize) -> Vec<Vec<BigInt>> {
    if w == 0 {
        return Vec::new();
    }
    // simplicial start from the first independent rows
    let mut chosen: Vec<usize> = Vec::with_capacity(w);
    let mut picked: Vec<Vec<BigInt>> = Vec::with_capacity(w);
    for (i, r) in rows.iter().enumerate() {
        picked.push(r.clone());
        if int_rank(&picked, w) == picked.len() {
            chosen.push(i);
            if chosen.len() == w {
                break;
            }
        } else {
            picked.pop();
        }
    }
    assert_eq!(chosen.len(), w, "inequalities of a pointed cone have full rank");
    let b = RatMatrix::from_rows(int_rows_to_rat(&picked)).expect("square rows");
    let b_inv = b.inverse().expect("independent rows");
    let mut rays: Vec<Vec<BigInt>> = (0..w).map(|j| primitive_from_rat(&b_inv.col(j))).collect();
    let mut processed: Vec<Vec<BigInt>> = picked;

    for (i, a) in rows.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            processed.push(a.clone());
            continue;
        }
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if v.is_positive() {
                pos.push((r, v));
                next.push(r.clone());
            } else if v.is_zero() {
                next.push(r.clone());
            } else {
                neg.push((r, v));
            }
        }
        for (p, vp) in &pos {
            for (n, vn) in &neg {
                if !adjacent(&processed, p, n, w) {
                    continue;
                }
                let combo: Vec<BigInt> = p.iter().zip(n.iter()).map(|(pi, ni)| *vp * ni - *vn * pi).collect();
                next.push(primitive(&combo));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(a.clone());
    }
    rays
}

/// Two extreme rays are adjacent when the constraints tight at both have
/// rank `w - 2`.
fn adjacent(processed: &[Vec<BigInt>], p: &[BigInt], n: &[BigInt], w: usize) -> bool {
    let tight: Vec<Vec<BigInt>> = processed
        .iter()
        .filter(|a| dot(a, p).is_zero() && dot(a, n).is_zero())
        .cloned()
        .collect();
    if w < 2 || tight.len() + 2 < w {
        return false;
    }
    int_rank(&tight, w) == w - 2
}
