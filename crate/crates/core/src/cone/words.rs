use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Cone, ConeError, RayVec, Result};
use crate::lattice::IntLattice;
use crate::linalg::{is_zero_vec, primitive, IntMatrix};

/// Matrices reachable by short words in a set of generators, each with one
/// witness word. The identity (empty word) comes first; the rest follow in
/// breadth-first discovery order, which is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    matrices: Vec<IntMatrix>,
    words: Vec<Vec<String>>,
}

impl WordSet {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn words(&self) -> &[Vec<String>] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntMatrix, &[String])> {
        self.matrices.iter().zip(self.words.iter().map(Vec::as_slice))
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.matrices.contains(m)
    }
}

/// All products `g_1 g_2 ... g_j` with `j <= max_len` of the labelled
/// generators (and their inverses, labelled `name^-1`, when requested),
/// deduplicated by entries.
pub fn enumerate_words(
    generators: &[(String, IntMatrix)],
    max_len: usize,
    include_inverses: bool,
) -> Result<WordSet> {
    let Some((_, first)) = generators.first() else {
        return Err(ConeError::NoGenerators);
    };
    let n = first.rows();
    let mut letters: Vec<(String, IntMatrix)> = Vec::new();
    for (label, g) in generators {
        if g.rows() != n || g.cols() != n {
            return Err(ConeError::Dimension { expected: n, found: g.rows().max(g.cols()) });
        }
        let inv = g.unimodular_inverse().map_err(|_| ConeError::NotInvertible {
            label: label.clone(),
            det: g.det().unwrap_or_default(),
        })?;
        letters.push((label.clone(), g.clone()));
        if include_inverses {
            letters.push((format!("{label}^-1"), inv));
        }
    }

    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut set = WordSet { matrices: vec![id], words: vec![Vec::new()] };
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for &i in &frontier {
            for (label, g) in &letters {
                let m = &set.matrices[i] * g;
                if seen.insert(m.clone()) {
                    let mut w = set.words[i].clone();
                    w.push(label.clone());
                    set.matrices.push(m);
                    set.words.push(w);
                    next.push(set.matrices.len() - 1);
                }
            }
        }
        frontier = next;
    }
    Ok(set)
}

/// Normals of the Dirichlet half-spaces `{y : x.y <= x.gy}`: for each `g`
/// the primitive vector `(g - I)^T G x`, with zero normals dropped and
/// duplicates removed, sorted.
pub fn dirichlet_halfspaces(l: &IntLattice, x: &[BigInt], words: &WordSet) -> Result<Vec<RayVec>> {
    let n = l.rank();
    if x.len() != n {
        return Err(ConeError::Dimension { expected: n, found: x.len() });
    }
    let gx = l.gram().mul_vec(x)?;
    let mut out: Vec<RayVec> = Vec::new();
    for g in words.matrices() {
        if g.rows() != n {
            return Err(ConeError::Dimension { expected: n, found: g.rows() });
        }
        // ((g - I)^T G x)_j = sum_i (g_ij - δ_ij) (Gx)_i
        let normal: Vec<BigInt> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let e = if i == j { &g[(i, j)] - 1 } else { g[(i, j)].clone() };
                        e * &gx[i]
                    })
                    .sum()
            })
            .collect();
        if !is_zero_vec(&normal) {
            out.push(primitive(&normal));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Self-intersection of a ray of a Dirichlet domain and whether it lies in
/// the closed positive cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayPositivity {
    pub ray: RayVec,
    pub norm: BigInt,
    pub inside: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletDomain {
    pub cone: Cone,
    /// Set when no word gave a constraint, so the cone is the whole space.
    pub improper: bool,
    pub positivity: Vec<RayPositivity>,
    pub words: usize,
}

impl DirichletDomain {
    pub fn all_rays_positive(&self) -> bool {
        self.positivity.iter().all(|p| p.inside)
    }
}

/// The polyhedral Dirichlet domain `D(x, G(k))`, with each ray checked
/// against the closed positive cone `y.y >= 0`.
pub fn dirichlet_domain(
    l: &IntLattice,
    x: &[BigInt],
    generators: &[(String, IntMatrix)],
    k: usize,
    include_inverses: bool,
) -> Result<DirichletDomain> {
    let words = enumerate_words(generators, k, include_inverses)?;
    let normals = dirichlet_halfspaces(l, x, &words)?;
    let cone = Cone::from_facets(l.rank(), &normals)?;
    let positivity = cone
        .rays()
        .iter()
        .map(|r| {
            let norm = l.norm(r).expect("sizes match");
            let inside = !norm.is_negative();
            RayPositivity { ray: r.clone(), norm, inside }
        })
        .collect();
    let improper = normals.is_empty();
    debug_assert!(!improper || cone.is_full_space());
    Ok(DirichletDomain { cone, improper, positivity, words: words.len() })
}
