//! Rational polyhedral cones in both ray and inequality form.
//!
//! A [`Cone`] is always stored canonically: its lineality space and its
//! linear span are kept as reduced echelon bases, rays live in the
//! orthogonal complement of the lineality space, and facet normals live in
//! the span. Two cones are equal exactly when their canonical data agree.

mod dd;
mod ops;
mod words;

pub use ops::{covers, dual, quotient_image, CoverageVerdict};
pub use words::{dirichlet_domain, dirichlet_halfspaces, enumerate_words, DirichletDomain, RayPositivity, WordSet};

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice::LatticeError;
use crate::linalg::{dot, is_zero_vec, primitive, LinalgError};

/// A primitive integer vector.
pub type RayVec = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("expected ambient dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("no generators given")]
    NoGenerators,
    #[error("zero vector in cone data")]
    ZeroVector,
    #[error("pairing matrix is singular")]
    SingularPairing,
    #[error("map has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("generator {label} is not invertible over the integers (det = {det})")]
    NotInvertible { label: String, det: BigInt },
}

pub type Result<T> = std::result::Result<T, ConeError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<RayVec>,
    lineality: Vec<RayVec>,
    facets: Vec<RayVec>,
    equations: Vec<RayVec>,
}

fn check_vectors(dim: usize, vs: &[Vec<BigInt>]) -> Result<()> {
    if dim == 0 {
        return Err(ConeError::ZeroDimension);
    }
    for v in vs {
        if v.len() != dim {
            return Err(ConeError::Dimension { expected: dim, found: v.len() });
        }
        if is_zero_vec(v) {
            return Err(ConeError::ZeroVector);
        }
    }
    Ok(())
}

impl Cone {
    /// The cone spanned by `rays`.
    pub fn from_rays(dim: usize, rays: &[Vec<BigInt>]) -> Result<Self> {
        Self::from_generators(dim, rays, &[])
    }

    /// The cone `cone(rays) + span(lineality)`.
    pub fn from_generators(dim: usize, rays: &[Vec<BigInt>], lineality: &[Vec<BigInt>]) -> Result<Self> {
        check_vectors(dim, rays)?;
        check_vectors(dim, lineality)?;
        let (facets, equations) = dd::double_description(dim, rays, lineality);
        let (rays, lineality) = dd::double_description(dim, &facets, &equations);
        Ok(Self { dim, rays, lineality, facets, equations })
    }

    /// The cone `{x : a.x >= 0 for every a in ineqs}`.
    pub fn from_facets(dim: usize, ineqs: &[Vec<BigInt>]) -> Result<Self> {
        Self::from_constraints(dim, ineqs, &[])
    }

    /// The cone `{x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}`.
    pub fn from_constraints(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> Result<Self> {
        check_vectors(dim, ineqs)?;
        check_vectors(dim, eqs)?;
        let (rays, lineality) = dd::double_description(dim, ineqs, eqs);
        let (facets, equations) = dd::double_description(dim, &rays, &lineality);
        Ok(Self { dim, rays, lineality, facets, equations })
    }

    /// The whole ambient space.
    pub fn full(dim: usize) -> Result<Self> {
        Self::from_facets(dim, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays of the pointed part, primitive and sorted.
    pub fn rays(&self) -> &[RayVec] {
        &self.rays
    }

    /// Canonical basis of the lineality space.
    pub fn lineality(&self) -> &[RayVec] {
        &self.lineality
    }

    /// Primitive inward facet normals, sorted.
    pub fn facets(&self) -> &[RayVec] {
        &self.facets
    }

    /// Canonical basis of the linear forms vanishing on the cone.
    pub fn equations(&self) -> &[RayVec] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.lineality.len() == self.dim
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(ConeError::Dimension { expected: self.dim, found });
        }
        Ok(())
    }

    pub fn member(&self, v: &[BigInt]) -> Result<bool> {
        self.check_dim(v.len())?;
        Ok(self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| dot(f, v) >= BigInt::zero()))
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        self.check_dim(other.dim)?;
        for r in &other.rays {
            if !self.member(r)? {
                return Ok(false);
            }
        }
        for l in &other.lineality {
            let neg: Vec<BigInt> = l.iter().map(|x| -x).collect();
            if !self.member(l)? || !self.member(&neg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Cone) -> Result<bool> {
        self.check_dim(other.dim)?;
        Ok(self.rays == other.rays && self.lineality == other.lineality)
    }

    /// A primitive point in the relative interior: the sum of the rays.
    pub fn interior_point(&self) -> RayVec {
        let mut p = vec![BigInt::zero(); self.dim];
        for r in &self.rays {
            for (a, b) in p.iter_mut().zip(r) {
                *a += b;
            }
        }
        primitive(&p)
    }

    /// `self ∩ {x : h.x >= 0}`.
    pub fn intersect_halfspace(&self, h: &[BigInt]) -> Result<Self> {
        self.check_dim(h.len())?;
        let mut ineqs = self.facets.clone();
        if !is_zero_vec(h) {
            ineqs.push(h.to_vec());
        }
        Self::from_constraints(self.dim, &ineqs, &self.equations)
    }

    /// Intersection of two cones.
    pub fn intersect(&self, other: &Cone) -> Result<Self> {
        self.check_dim(other.dim)?;
        let ineqs: Vec<RayVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<RayVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        Self::from_constraints(self.dim, &ineqs, &eqs)
    }
}

/// `(1,0,-1)`.
pub fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| fmt_vec(r)).collect();
        write!(f, "<{}>", rays.join(", "))?;
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(|r| fmt_vec(r)).collect();
            write!(f, " + span{{{}}}", lin.join(", "))?;
        }
        Ok(())
    }
}

pub fn cone_from_rays(dim: usize, rays: &[Vec<BigInt>]) -> Result<Cone> {
    Cone::from_rays(dim, rays)
}

pub fn cone_from_facets(dim: usize, ineqs: &[Vec<BigInt>]) -> Result<Cone> {
    Cone::from_facets(dim, ineqs)
}

pub fn member(c: &Cone, v: &[BigInt]) -> Result<bool> {
    c.member(v)
}

pub fn contains_cone(c: &Cone, d: &Cone) -> Result<bool> {
    c.contains_cone(d)
}

pub fn equal(c: &Cone, d: &Cone) -> Result<bool> {
    c.equal(d)
}
