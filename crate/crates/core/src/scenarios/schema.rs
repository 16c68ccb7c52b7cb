//! Serde mirror of the scenario file format. Everything here is raw input;
//! [`super::Scenario`] is the validated form.

use std::collections::BTreeMap;

use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default)]
    pub notes: Vec<String>,
    pub chow: Option<ChowSpec>,
    pub n1: Option<N1Spec>,
    pub fiber_lattice: Option<FiberLatticeSpec>,
    #[serde(default)]
    pub sqms: Vec<SqmSpec>,
    pub quotient: Option<QuotientSpec>,
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub flags: Vec<FlagSpec>,
    #[serde(default)]
    pub expected: ExpectedSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChowSpec {
    pub vars: Vec<String>,
    pub dim: u32,
    #[serde(default)]
    pub relations: Vec<Vec<u32>>,
    pub valuation: Vec<ValuationSpec>,
    #[serde(rename = "H")]
    pub h: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationSpec {
    pub monomial: Vec<u32>,
    pub value: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct N1Spec {
    pub labels: Vec<String>,
    pub anticanonical: Option<Vec<i64>>,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub name: String,
    pub pairing: Vec<i64>,
    #[serde(default)]
    pub k_trivial: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberLatticeSpec {
    pub gram: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqmSpec {
    pub name: String,
    pub nef_rays: Vec<Vec<i64>>,
    pub dual_curves: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSpec {
    pub matrix: Vec<Vec<i64>>,
    pub kernel_ray: Vec<i64>,
    pub covering_domain: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub include_inverses: bool,
    pub k: Option<usize>,
    pub x: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub label: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagSpec {
    pub id: String,
    pub details: String,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedSpec {
    pub gram: Option<Vec<Vec<i64>>>,
    pub genus: Option<i64>,
    pub curve_class: Option<String>,
    pub movable: Option<MovableSpec>,
    pub minus_two: Option<MinusTwoSpec>,
    #[serde(default)]
    pub orders: BTreeMap<String, OrderSpec>,
    pub disc_factors: Option<Vec<i64>>,
    #[serde(default)]
    pub disc_action: BTreeMap<String, String>,
    #[serde(default)]
    pub torelli: BTreeMap<String, TorelliSpec>,
    pub boundary: Option<Vec<String>>,
    #[serde(default)]
    pub spot_checks: Vec<SpotCheckSpec>,
    #[serde(default)]
    pub domain_positivity: Vec<RayNormSpec>,
    pub translation: Option<TranslationSpec>,
    pub dirichlet_rays: Option<Vec<Vec<i64>>>,
    pub word_count: Option<usize>,
    pub coverage: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovableSpec {
    pub mode: String,
    #[serde(default)]
    pub labels: Vec<String>,
    pub inequalities: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
    pub witness: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinusTwoSpec {
    pub bound: u32,
    pub solutions: Option<Vec<Vec<i64>>>,
    pub max_modulus: u64,
    pub certificate: Option<u64>,
    #[serde(default)]
    pub extra_moduli: Vec<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OrderSpec {
    Finite(u64),
    Word(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorelliSpec {
    #[serde(default)]
    pub nodal: Vec<Vec<i64>>,
    pub verdict: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpotCheckSpec {
    pub matrix: String,
    pub vector: Vec<i64>,
    pub image: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayNormSpec {
    pub ray: Vec<i64>,
    pub norm: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslationSpec {
    pub f: Vec<i64>,
    pub y: Vec<i64>,
    pub matrix: String,
}
