//! Declarative geometric cases and the pipelines that verify them.
//!
//! A scenario file describes one variety: optionally its Chow ring and
//! polarisation, a divisor basis with named curve classes, the claimed nef
//! cones of its small modifications, the restriction map to the generic
//! fibre, and the isometries of the fibre lattice. [`run`] checks everything
//! the file claims and returns a [`Report`].

mod report;
pub mod schema;
mod verify;

pub use report::{Check, Report, Section, Status};
pub use verify::{
    verify_chow, verify_finite_case, verify_infinite_case, verify_lifting_conditions, verify_nef_duality,
};

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::chow::{fiber_gram, parse_class, ChowClass, ChowRing};
use crate::lattice::IntLattice;
use crate::linalg::{ivec, IntMatrix};
use schema::{ExpectedSpec, OrderSpec, ScenarioFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("malformed scenario: {0}")]
    Json(String),
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
    #[error("unknown builtin scenario `{0}`")]
    UnknownBuiltin(String),
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

fn invalid(path: impl Into<String>, msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid { path: path.into(), msg: msg.into() }
}

#[derive(Debug, Clone)]
pub struct ChowData {
    pub ring: Arc<ChowRing>,
    pub h: ChowClass,
    /// `L_i . L_j . H^{n-2}` over the ring variables.
    pub gram: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub pairing: Vec<BigInt>,
    pub k_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N1Data {
    pub labels: Vec<String>,
    pub anticanonical: Option<Vec<BigInt>>,
    pub curves: Vec<Curve>,
}

impl N1Data {
    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqmModel {
    pub name: String,
    pub nef_rays: Vec<Vec<BigInt>>,
    pub dual_curves: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientData {
    pub matrix: IntMatrix,
    pub kernel_ray: Vec<BigInt>,
    pub covering_domain: Option<Vec<Vec<BigInt>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub generators: Vec<(String, IntMatrix)>,
    pub include_inverses: bool,
    pub k: Option<usize>,
    pub x: Option<Vec<BigInt>>,
}

impl GroupData {
    pub fn generator(&self, label: &str) -> Option<&IntMatrix> {
        self.generators.iter().find(|(l, _)| l == label).map(|(_, m)| m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub id: String,
    pub details: String,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub notes: Vec<String>,
    pub chow: Option<ChowData>,
    pub n1: Option<N1Data>,
    /// The fibre lattice: the explicit Gram matrix if one is given, else the
    /// one derived from the Chow data.
    pub lattice: Option<IntLattice>,
    pub sqms: Vec<SqmModel>,
    pub quotient: Option<QuotientData>,
    pub group: Option<GroupData>,
    pub flags: Vec<Flag>,
    pub expected: ExpectedSpec,
}

const BUILTINS: &[(&str, &str)] = &[
    ("rank1", include_str!("../../data/scenarios/rank1.json")),
    ("p1xp3", include_str!("../../data/scenarios/p1xp3.json")),
    ("p1xV:1", include_str!("../../data/scenarios/p1xV-1.json")),
    ("p1xV:2", include_str!("../../data/scenarios/p1xV-2.json")),
    ("p1xV:3", include_str!("../../data/scenarios/p1xV-3.json")),
    ("p1xV:4", include_str!("../../data/scenarios/p1xV-4.json")),
    ("p1xV:5", include_str!("../../data/scenarios/p1xV-5.json")),
    ("quadric-cone", include_str!("../../data/scenarios/quadric-cone.json")),
    ("double-cover-p2p2", include_str!("../../data/scenarios/double-cover-p2p2.json")),
    ("p3xp3", include_str!("../../data/scenarios/p3xp3.json")),
    ("f134", include_str!("../../data/scenarios/f134.json")),
    ("bilinear-p3p3", include_str!("../../data/scenarios/bilinear-p3p3.json")),
    ("p1^4", include_str!("../../data/scenarios/p1-4.json")),
];

/// Names accepted by [`Scenario::builtin`], in a fixed order.
pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

/// The JSON source of a builtin scenario.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Loads a builtin by name, or else reads the argument as a file path.
pub fn load_scenario(name_or_path: &str) -> Result<Scenario> {
    match builtin_source(name_or_path) {
        Some(_) => Scenario::builtin(name_or_path),
        None => Scenario::from_path(name_or_path),
    }
}

/// Runs every applicable section of a builtin scenario.
pub fn run_builtin(name: &str) -> Result<Report> {
    Ok(run(&Scenario::builtin(name)?, Section::ALL))
}

/// Runs the requested sections; sections without data contribute nothing.
/// Sections are evaluated on separate threads and assembled in the order
/// given.
pub fn run(s: &Scenario, sections: &[Section]) -> Report {
    let parts: Vec<Vec<Check>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sections.iter().map(|&sec| scope.spawn(move || run_section(s, sec))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    Report::new(&s.name, parts.into_iter().flatten().collect())
}

fn run_section(s: &Scenario, sec: Section) -> Vec<Check> {
    let mut checks = match sec {
        Section::Chow => verify_chow(s),
        Section::Nef => verify_nef_duality(s),
        Section::Movable => verify_finite_case(s),
        Section::Lattice => verify::verify_lattice(s),
        Section::Domain => verify::verify_domain(s),
        Section::Lifting => verify_lifting_conditions(s),
    };
    checks.extend(
        s.flags
            .iter()
            .filter(|f| sec.owns(&f.id))
            .map(|f| Check::new(&f.id, Status::Flagged, f.details.clone())),
    );
    checks
}

fn int_matrix(rows: &[Vec<i64>], path: &str) -> Result<IntMatrix> {
    if rows.is_empty() {
        return Err(invalid(path, "matrix has no rows"));
    }
    IntMatrix::from_i64_rows(rows).map_err(|e| invalid(path, e.to_string()))
}

fn check_len(v: &[i64], n: usize, path: &str) -> Result<Vec<BigInt>> {
    if v.len() != n {
        return Err(invalid(path, format!("expected {n} entries, found {}", v.len())));
    }
    Ok(ivec(v))
}

fn check_rays(rays: &[Vec<i64>], n: usize, path: &str) -> Result<Vec<Vec<BigInt>>> {
    rays.iter().enumerate().map(|(i, r)| check_len(r, n, &format!("{path}[{i}]"))).collect()
}

fn unique<'a>(names: impl IntoIterator<Item = &'a String>, path: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(invalid(path, format!("duplicate name `{n}`")));
        }
    }
    Ok(())
}

impl Scenario {
    pub fn builtin(name: &str) -> Result<Self> {
        let src = builtin_source(name).ok_or_else(|| ScenarioError::UnknownBuiltin(name.to_string()))?;
        Self::from_json(src)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p)
            .map_err(|e| ScenarioError::Io { path: p.display().to_string(), msg: e.to_string() })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioError::Json(e.to_string()))?;
        Self::from_file(file)
    }

    /// Validates the raw file: sizes agree, names resolve, the quotient kills
    /// its kernel ray, and the anticanonical class matches the Chow data.
    pub fn from_file(f: ScenarioFile) -> Result<Self> {
        if f.name.trim().is_empty() {
            return Err(invalid("name", "must not be empty"));
        }

        let chow = match &f.chow {
            None => None,
            Some(c) => {
                let valuation = c
                    .valuation
                    .iter()
                    .map(|v| (v.monomial.clone(), BigInt::from(v.value)))
                    .collect();
                let ring = ChowRing::new(c.vars.clone(), c.dim, c.relations.clone(), valuation)
                    .map_err(|e| invalid("chow", e.to_string()))?;
                let h = parse_class(&c.h, &ring).map_err(|e| invalid("chow.H", e.to_string()))?;
                let basis: Vec<ChowClass> = (0..ring.vars().len()).map(|i| ChowClass::var(&ring, i)).collect();
                let gram = fiber_gram(&basis, &h).map_err(|e| invalid("chow.H", e.to_string()))?;
                Some(ChowData { ring, h, gram })
            }
        };

        let lattice = match (&f.fiber_lattice, &chow) {
            (Some(fl), _) => {
                let g = int_matrix(&fl.gram, "fiber_lattice.gram")?;
                Some(IntLattice::new(g).map_err(|e| invalid("fiber_lattice.gram", e.to_string()))?)
            }
            (None, Some(c)) => Some(
                IntLattice::new(c.gram.clone()).map_err(|e| invalid("chow", format!("derived fibre gram: {e}")))?,
            ),
            (None, None) => None,
        };

        let n1 = match &f.n1 {
            None => None,
            Some(n) => Some(load_n1(n, chow.as_ref())?),
        };

        let mut sqms = Vec::new();
        if !f.sqms.is_empty() {
            let n1 = n1.as_ref().ok_or_else(|| invalid("sqms", "models need an n1 section"))?;
            unique(f.sqms.iter().map(|m| &m.name), "sqms")?;
            let dim = n1.labels.len();
            for (i, m) in f.sqms.iter().enumerate() {
                let path = format!("sqms[{i}]");
                if m.nef_rays.is_empty() {
                    return Err(invalid(format!("{path}.nef_rays"), "no rays"));
                }
                let nef_rays = check_rays(&m.nef_rays, dim, &format!("{path}.nef_rays"))?;
                for (j, c) in m.dual_curves.iter().enumerate() {
                    if n1.curve(c).is_none() {
                        return Err(invalid(format!("{path}.dual_curves[{j}]"), format!("unknown curve `{c}`")));
                    }
                }
                sqms.push(SqmModel { name: m.name.clone(), nef_rays, dual_curves: m.dual_curves.clone() });
            }
        }

        let quotient = match &f.quotient {
            None => None,
            Some(q) => {
                let matrix = int_matrix(&q.matrix, "quotient.matrix")?;
                if let Some(n1) = &n1 {
                    if matrix.cols() != n1.labels.len() {
                        return Err(invalid(
                            "quotient.matrix",
                            format!("has {} columns but the divisor basis has {}", matrix.cols(), n1.labels.len()),
                        ));
                    }
                }
                let kernel_ray = check_len(&q.kernel_ray, matrix.cols(), "quotient.kernel_ray")?;
                let image = matrix.mul_vec(&kernel_ray).map_err(|e| invalid("quotient.kernel_ray", e.to_string()))?;
                if kernel_ray.iter().all(|x| x == &BigInt::from(0)) || image.iter().any(|x| x != &BigInt::from(0)) {
                    return Err(invalid("quotient.kernel_ray", "must be a nonzero vector mapped to zero"));
                }
                let covering_domain = match &q.covering_domain {
                    None => None,
                    Some(rays) => Some(check_rays(rays, matrix.rows(), "quotient.covering_domain")?),
                };
                Some(QuotientData { matrix, kernel_ray, covering_domain })
            }
        };

        let group = match &f.group {
            None => None,
            Some(g) => {
                if g.generators.is_empty() {
                    return Err(invalid("group.generators", "no generators"));
                }
                unique(g.generators.iter().map(|x| &x.label), "group.generators")?;
                let rank = lattice.as_ref().map(IntLattice::rank);
                let mut gens = Vec::new();
                for (i, x) in g.generators.iter().enumerate() {
                    let path = format!("group.generators[{i}].matrix");
                    let m = int_matrix(&x.matrix, &path)?;
                    let n = rank.unwrap_or(m.rows());
                    if m.rows() != n || m.cols() != n {
                        return Err(invalid(path, format!("expected a {n}x{n} matrix")));
                    }
                    gens.push((x.label.clone(), m));
                }
                let n = gens[0].1.rows();
                let x = match &g.x {
                    None => None,
                    Some(x) => Some(check_len(x, n, "group.x")?),
                };
                if g.k.is_some() && x.is_none() {
                    return Err(invalid("group.x", "a base point is needed when k is given"));
                }
                Some(GroupData { generators: gens, include_inverses: g.include_inverses, k: g.k, x })
            }
        };

        let flags = f
            .flags
            .iter()
            .enumerate()
            .map(|(i, fl)| {
                if Section::ALL.iter().any(|s| s.owns(&fl.id)) {
                    Ok(Flag { id: fl.id.clone(), details: fl.details.clone() })
                } else {
                    Err(invalid(format!("flags[{i}].id"), format!("`{}` names no section", fl.id)))
                }
            })
            .collect::<Result<_>>()?;

        let s = Scenario {
            name: f.name,
            notes: f.notes,
            chow,
            n1,
            lattice,
            sqms,
            quotient,
            group,
            flags,
            expected: f.expected,
        };
        validate_expected(&s)?;
        Ok(s)
    }
}

fn load_n1(n: &schema::N1Spec, chow: Option<&ChowData>) -> Result<N1Data> {
    if n.labels.is_empty() {
        return Err(invalid("n1.labels", "no labels"));
    }
    unique(&n.labels, "n1.labels")?;
    unique(n.curves.iter().map(|c| &c.name), "n1.curves")?;
    let dim = n.labels.len();
    let curves = n
        .curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(Curve {
                name: c.name.clone(),
                pairing: check_len(&c.pairing, dim, &format!("n1.curves[{i}].pairing"))?,
                k_trivial: c.k_trivial,
            })
        })
        .collect::<Result<_>>()?;
    let explicit = match &n.anticanonical {
        None => None,
        Some(v) => Some(check_len(v, dim, "n1.anticanonical")?),
    };
    let anticanonical = match chow {
        None => explicit,
        Some(c) => {
            let computed = anticanonical_from_chow(c, &n.labels)?;
            if let Some(e) = explicit {
                if e != computed {
                    return Err(invalid(
                        "n1.anticanonical",
                        format!("disagrees with the value {} computed from the Chow data", crate::cone::fmt_vec(&computed)),
                    ));
                }
            }
            Some(computed)
        }
    };
    Ok(N1Data { labels: n.labels.clone(), anticanonical, curves })
}

/// `-K = (n - 2)(H - F)` in the basis (ring variables, exceptional divisor).
fn anticanonical_from_chow(c: &ChowData, labels: &[String]) -> Result<Vec<BigInt>> {
    let vars = c.ring.vars();
    if labels.len() != vars.len() + 1 || labels[..vars.len()] != *vars {
        return Err(invalid(
            "n1.labels",
            "with Chow data the basis must be the ring variables followed by one exceptional label".to_string(),
        ));
    }
    let k = BigInt::from(c.ring.dim()) - BigInt::from(2);
    let mut v: Vec<BigInt> = (0..vars.len())
        .map(|i| {
            let mut m = vec![0u32; vars.len()];
            m[i] = 1;
            &k * c.h.coefficient(&m)
        })
        .collect();
    v.push(-k);
    Ok(v)
}

fn validate_expected(s: &Scenario) -> Result<()> {
    let e = &s.expected;
    let rank = s.lattice.as_ref().map(IntLattice::rank);
    let need_lattice = |path: &str| rank.ok_or_else(|| invalid(path, "needs a fibre lattice"));
    if let Some(g) = &e.gram {
        let n = need_lattice("expected.gram")?;
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(invalid("expected.gram", format!("expected a {n}x{n} matrix")));
        }
    }
    if (e.genus.is_some() || e.curve_class.is_some()) && s.chow.is_none() {
        return Err(invalid("expected", "genus and curve_class need Chow data"));
    }
    if let Some(text) = &e.curve_class {
        let c = s.chow.as_ref().expect("checked above");
        parse_class(text, &c.ring).map_err(|err| invalid("expected.curve_class", err.to_string()))?;
    }
    if let Some(m) = &e.movable {
        if m.mode != "exact" && m.mode != "upper-bound" {
            return Err(invalid("expected.movable.mode", format!("unknown mode `{}`", m.mode)));
        }
        let dim = m.inequalities.first().map(Vec::len).unwrap_or(0);
        if dim == 0 {
            return Err(invalid("expected.movable.inequalities", "no inequalities"));
        }
        check_rays(&m.inequalities, dim, "expected.movable.inequalities")?;
        check_rays(&m.rays, dim, "expected.movable.rays")?;
        if !m.labels.is_empty() && m.labels.len() != dim {
            return Err(invalid("expected.movable.labels", format!("expected {dim} labels")));
        }
        if let Some(w) = &m.witness {
            check_len(w, dim, "expected.movable.witness")?;
        }
    }
    if let Some(m) = &e.minus_two {
        let n = need_lattice("expected.minus_two")?;
        if let Some(sol) = &m.solutions {
            check_rays(sol, n, "expected.minus_two.solutions")?;
        }
    }
    let group = s.group.as_ref();
    let label_ok = |label: &str, path: String| -> Result<()> {
        match group.and_then(|g| g.generator(label)) {
            Some(_) => Ok(()),
            None => Err(invalid(path, format!("unknown generator `{label}`"))),
        }
    };
    for (label, o) in &e.orders {
        label_ok(label, format!("expected.orders.{label}"))?;
        if let OrderSpec::Word(w) = o {
            if w != "infinite" {
                return Err(invalid(format!("expected.orders.{label}"), "use a number or \"infinite\""));
            }
        }
    }
    if e.disc_factors.is_some() {
        need_lattice("expected.disc_factors")?;
    }
    for (label, kind) in &e.disc_action {
        label_ok(label, format!("expected.disc_action.{label}"))?;
        if !matches!(kind.as_str(), "+Id" | "-Id" | "other") {
            return Err(invalid(format!("expected.disc_action.{label}"), "use \"+Id\", \"-Id\" or \"other\""));
        }
    }
    for (label, t) in &e.torelli {
        let path = format!("expected.torelli.{label}");
        label_ok(label, path.clone())?;
        let n = need_lattice(&path)?;
        check_rays(&t.nodal, n, &format!("{path}.nodal"))?;
        if !matches!(t.verdict.as_str(), "induces" | "power-induces" | "fails") {
            return Err(invalid(format!("{path}.verdict"), "use \"induces\", \"power-induces\" or \"fails\""));
        }
    }
    if let Some(b) = &e.boundary {
        if need_lattice("expected.boundary")? != 2 || b.len() != 2 {
            return Err(invalid("expected.boundary", "needs a rank-2 lattice and two slopes"));
        }
    }
    for (i, sc) in e.spot_checks.iter().enumerate() {
        let path = format!("expected.spot_checks[{i}]");
        label_ok(&sc.matrix, format!("{path}.matrix"))?;
        let n = need_lattice(&path)?;
        check_len(&sc.vector, n, &format!("{path}.vector"))?;
        check_len(&sc.image, n, &format!("{path}.image"))?;
    }
    for (i, r) in e.domain_positivity.iter().enumerate() {
        let n = need_lattice("expected.domain_positivity")?;
        check_len(&r.ray, n, &format!("expected.domain_positivity[{i}].ray"))?;
    }
    if let Some(t) = &e.translation {
        let n = need_lattice("expected.translation")?;
        check_len(&t.f, n, "expected.translation.f")?;
        check_len(&t.y, n, "expected.translation.y")?;
        label_ok(&t.matrix, "expected.translation.matrix".into())?;
    }
    if e.dirichlet_rays.is_some() || e.word_count.is_some() {
        let n = need_lattice("expected.dirichlet_rays")?;
        if group.and_then(|g| g.k).is_none() {
            return Err(invalid("expected.dirichlet_rays", "needs group.k and group.x"));
        }
        if let Some(r) = &e.dirichlet_rays {
            check_rays(r, n, "expected.dirichlet_rays")?;
        }
    }
    if e.coverage.is_some() && s.quotient.as_ref().and_then(|q| q.covering_domain.as_ref()).is_none() {
        return Err(invalid("expected.coverage", "needs quotient.covering_domain"));
    }
    Ok(())
}
