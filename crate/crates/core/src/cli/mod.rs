//! Command-line front end. [`run`] does all the work and returns the output
//! instead of printing it, so the binary stays a two-line wrapper and tests
//! can drive the whole interface in-process.

mod args;

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::Parser;
use num_bigint::BigInt;
use thiserror::Error;

use crate::chow::{base_curve_class, curve_genus, fiber_gram, parse_class, top_value, ChowClass, ChowRing};
use crate::cone::{covers, dirichlet_domain, dirichlet_halfspaces, dual, enumerate_words, fmt_vec, quotient_image, Cone};
use crate::lattice::{
    certify_no_norm, discriminant_group, element_order, find_norm_vectors, is_isometry, positive_cone_boundary,
    torelli_check, translation_isometry, IntLattice,
};
use crate::linalg::IntMatrix;
use crate::scenarios::{self, builtin_names, Scenario, Section};
pub use args::Cli;
use args::{
    ChowArgs, ChowCmd, Command, ConeCmd, ConeInput, DomainCmd, GroupArgs, LatticeCmd, OutputFormat, RingArgs,
    VerifyArgs,
};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Compute(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::Chow(a) => chow(a).map(|s| (EXIT_OK, s)),
        Command::Lattice { cmd } => lattice(cmd).map(|s| (EXIT_OK, s)),
        Command::Cone { cmd } => cone(cmd).map(|s| (EXIT_OK, s)),
        Command::Domain { cmd } => domain(cmd).map(|s| (EXIT_OK, s)),
        Command::Verify(a) => verify(a),
    }
}

// ---------------------------------------------------------------- inputs

/// Inline JSON when the text starts with `[`, otherwise a path to a JSON file.
fn json_or_file(text: &str) -> Result<String> {
    if text.trim_start().starts_with('[') {
        Ok(text.to_string())
    } else {
        read_file(Path::new(text))
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("cannot parse {what}: {e}")))
}

fn rows(text: &str, what: &str) -> Result<Vec<Vec<BigInt>>> {
    let raw: Vec<Vec<i64>> = parse_json(&json_or_file(text)?, what)?;
    Ok(raw.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

fn vector(text: &str, what: &str) -> Result<Vec<BigInt>> {
    let raw: Vec<i64> = parse_json(text, what)?;
    Ok(raw.into_iter().map(BigInt::from).collect())
}

fn matrix(text: &str, what: &str) -> Result<IntMatrix> {
    let r = rows(text, what)?;
    if r.is_empty() {
        return Err(CliError::Usage(format!("{what} is empty")));
    }
    IntMatrix::from_rows(r).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

fn lattice_from(text: &str) -> Result<IntLattice> {
    IntLattice::new(matrix(text, "gram matrix")?).map_err(|e| CliError::Usage(format!("gram matrix: {e}")))
}

fn ray_list_dim(rays: &[Vec<BigInt>], dim: Option<usize>, what: &str) -> Result<usize> {
    match (dim, rays.first()) {
        (Some(d), _) => Ok(d),
        (None, Some(r)) => Ok(r.len()),
        (None, None) => Err(CliError::Usage(format!("{what} is empty; pass --dim"))),
    }
}

fn cone_from_input(input: &ConeInput) -> Result<Cone> {
    let facets = match (&input.facets, &input.facets_file) {
        (Some(t), None) => Some(t.clone()),
        (None, Some(p)) => Some(read_file(p)?),
        (Some(_), Some(_)) => return Err(CliError::Usage("give --facets or --facets-file, not both".into())),
        (None, None) => None,
    };
    match (&input.rays, facets) {
        (Some(r), None) => {
            let rays = rows(r, "rays")?;
            let dim = ray_list_dim(&rays, input.dim, "ray list")?;
            Cone::from_rays(dim, &rays).map_err(compute)
        }
        (None, Some(f)) => {
            let ineqs = rows(&f, "facets")?;
            let dim = ray_list_dim(&ineqs, input.dim, "facet list")?;
            Cone::from_facets(dim, &ineqs).map_err(compute)
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give either rays or facets, not both".into())),
        (None, None) => Err(CliError::Usage("a cone needs --rays or --facets".into())),
    }
}

fn ring_from(args: &RingArgs) -> Result<(Arc<ChowRing>, Option<ChowClass>)> {
    let from_scenario = |s: Scenario| -> Result<(Arc<ChowRing>, Option<ChowClass>)> {
        let c = s.chow.ok_or_else(|| CliError::Usage(format!("scenario `{}` has no Chow data", s.name)))?;
        Ok((c.ring, Some(c.h)))
    };
    let (ring, h) = match (&args.builtin, &args.scenario, &args.vars) {
        (Some(name), None, None) => from_scenario(Scenario::builtin(name).map_err(compute)?)?,
        (None, Some(path), None) => from_scenario(Scenario::from_path(path).map_err(compute)?)?,
        (None, None, Some(vars)) => {
            let dim = args.dim.ok_or_else(|| CliError::Usage("--vars needs --dim".into()))?;
            let relations: Vec<Vec<u32>> = match &args.relations {
                Some(t) => parse_json(&json_or_file(t)?, "relations")?,
                None => Vec::new(),
            };
            let valuation: Vec<(Vec<u32>, i64)> = match &args.valuation {
                Some(t) => parse_json(&json_or_file(t)?, "valuation")?,
                None => return Err(CliError::Usage("--vars needs --valuation".into())),
            };
            let names: Vec<String> = vars.split(',').map(|s| s.trim().to_string()).collect();
            let ring = ChowRing::new(
                names,
                dim,
                relations,
                valuation.into_iter().map(|(m, v)| (m, BigInt::from(v))).collect(),
            )
            .map_err(compute)?;
            (ring, None)
        }
        (None, None, None) => return Err(CliError::Usage("give a ring: --builtin, --scenario or --vars".into())),
        _ => return Err(CliError::Usage("give only one of --builtin, --scenario, --vars".into())),
    };
    let h = match &args.h {
        Some(text) => Some(parse_class(text, &ring).map_err(compute)?),
        None => h,
    };
    Ok((ring, h))
}

type Labelled = Vec<(String, IntMatrix)>;

fn generators(g: &GroupArgs) -> Result<(Labelled, Option<Scenario>)> {
    if let Some(name) = &g.builtin {
        let s = Scenario::builtin(name).map_err(compute)?;
        let gens = s
            .group
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("scenario `{name}` has no group")))?
            .generators
            .clone();
        return Ok((gens, Some(s)));
    }
    if g.gen.is_empty() {
        return Err(CliError::Usage("give generators with --gen LABEL=MATRIX or use --builtin".into()));
    }
    let gens = g
        .gen
        .iter()
        .map(|spec| {
            let (label, m) = spec
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("generator `{spec}` is not LABEL=MATRIX")))?;
            Ok((label.trim().to_string(), matrix(m, &format!("generator {label}"))?))
        })
        .collect::<Result<_>>()?;
    Ok((gens, None))
}

// ---------------------------------------------------------------- chow

fn chow(a: ChowArgs) -> Result<String> {
    let (ring, h) = ring_from(&a.ring)?;
    let need_h = || h.clone().ok_or_else(|| CliError::Usage("this command needs --h".into()));
    let mut out = String::new();
    match a.cmd {
        ChowCmd::Eval { expr } => {
            let c = parse_class(&expr, &ring).map_err(compute)?;
            writeln!(out, "{c}").unwrap();
            if matches!(c.degree(), Ok(Some(d)) if d == ring.dim()) {
                writeln!(out, "degree: {}", top_value(&c).map_err(compute)?).unwrap();
            }
        }
        ChowCmd::Gram { basis } => {
            let h = need_h()?;
            let basis: Vec<ChowClass> = match basis {
                Some(list) => list
                    .split(',')
                    .map(|t| parse_class(t, &ring).map_err(compute))
                    .collect::<Result<_>>()?,
                None => (0..ring.vars().len()).map(|i| ChowClass::var(&ring, i)).collect(),
            };
            writeln!(out, "{}", fiber_gram(&basis, &h).map_err(compute)?).unwrap();
        }
        ChowCmd::Curve => {
            writeln!(out, "{}", base_curve_class(&need_h()?).map_err(compute)?).unwrap();
        }
        ChowCmd::Genus => {
            writeln!(out, "{}", curve_genus(&need_h()?).map_err(compute)?).unwrap();
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- lattice

fn lattice(cmd: LatticeCmd) -> Result<String> {
    let mut out = String::new();
    match cmd {
        LatticeCmd::Form { gram, x, y } => {
            let l = lattice_from(&gram)?;
            let x = vector(&x, "x")?;
            let y = match y {
                Some(y) => vector(&y, "y")?,
                None => x.clone(),
            };
            writeln!(out, "{}", l.form(&x, &y).map_err(compute)?).unwrap();
        }
        LatticeCmd::Disc { gram } => {
            let d = discriminant_group(&lattice_from(&gram)?);
            writeln!(out, "factors: {}", fmt_vec(&d.factors)).unwrap();
            writeln!(out, "order: {}", d.order).unwrap();
            for (i, g) in d.generators.iter().enumerate() {
                let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
                writeln!(out, "generator {i}: ({})", parts.join(",")).unwrap();
            }
        }
        LatticeCmd::Isometry { gram, matrix: m } => {
            let ok = is_isometry(&lattice_from(&gram)?, &matrix(&m, "matrix")?).map_err(compute)?;
            writeln!(out, "{}", if ok { "isometry" } else { "not an isometry" }).unwrap();
        }
        LatticeCmd::Order { matrix: m } => {
            writeln!(out, "{}", element_order(&matrix(&m, "matrix")?).map_err(compute)?).unwrap();
        }
        LatticeCmd::MinusTwo { gram, bound, certify, norm } => {
            let l = lattice_from(&gram)?;
            let norm = BigInt::from(norm);
            let sols = find_norm_vectors(&l, &norm, bound);
            let mut line = if sols.is_empty() {
                "no solutions".to_string()
            } else {
                let parts: Vec<String> = sols.iter().map(|v| fmt_vec(v)).collect();
                format!("{} solutions: {}", sols.len(), parts.join(" "))
            };
            if let Some(max) = certify {
                match certify_no_norm(&l, &norm, max) {
                    Some(m) => write!(line, "; certificate mod {m}").unwrap(),
                    None => write!(line, "; no certificate up to {max}").unwrap(),
                }
            }
            writeln!(out, "{line}").unwrap();
        }
        LatticeCmd::Boundary { gram } => {
            let (a, b) = positive_cone_boundary(&lattice_from(&gram)?).map_err(compute)?;
            writeln!(out, "{a}\n{b}").unwrap();
        }
        LatticeCmd::Translation { gram, f, y } => {
            let t = translation_isometry(&lattice_from(&gram)?, &vector(&f, "f")?, &vector(&y, "y")?)
                .map_err(compute)?;
            writeln!(out, "{t}").unwrap();
        }
        LatticeCmd::Torelli { gram, matrix: m, nodal } => {
            let nodal = match nodal {
                Some(t) => rows(&t, "nodal classes")?,
                None => Vec::new(),
            };
            let v = torelli_check(&lattice_from(&gram)?, &matrix(&m, "matrix")?, &nodal).map_err(compute)?;
            writeln!(out, "{v}").unwrap();
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- cone

fn write_cone(out: &mut String, c: &Cone) {
    for r in c.rays() {
        writeln!(out, "{}", fmt_vec(r)).unwrap();
    }
    for l in c.lineality() {
        writeln!(out, "line {}", fmt_vec(l)).unwrap();
    }
}

fn cone(cmd: ConeCmd) -> Result<String> {
    let mut out = String::new();
    match cmd {
        ConeCmd::Rays { cone } => write_cone(&mut out, &cone_from_input(&cone)?),
        ConeCmd::Facets { cone } => {
            let c = cone_from_input(&cone)?;
            for f in c.facets() {
                writeln!(out, "{} >= 0", fmt_vec(f)).unwrap();
            }
            for e in c.equations() {
                writeln!(out, "{} = 0", fmt_vec(e)).unwrap();
            }
        }
        ConeCmd::Member { cone, point } => {
            let ok = cone_from_input(&cone)?.member(&vector(&point, "point")?).map_err(compute)?;
            writeln!(out, "{ok}").unwrap();
        }
        ConeCmd::Dual { cone, pairing } => {
            let c = cone_from_input(&cone)?;
            let p = match pairing {
                Some(t) => matrix(&t, "pairing")?.to_rat(),
                None => crate::linalg::RatMatrix::identity(c.ambient_dim()),
            };
            write_cone(&mut out, &dual(&c, &p).map_err(compute)?);
        }
        ConeCmd::Equal { cone, other } => {
            let a = cone_from_input(&cone)?;
            let b = rows(&other, "other rays")?;
            let b = Cone::from_rays(a.ambient_dim(), &b).map_err(compute)?;
            writeln!(out, "{}", a.equal(&b).map_err(compute)?).unwrap();
        }
        ConeCmd::Quotient { cone, matrix: q } => {
            let c = cone_from_input(&cone)?;
            write_cone(&mut out, &quotient_image(&c, &matrix(&q, "quotient matrix")?.to_rat()).map_err(compute)?);
        }
        ConeCmd::Cover { target, piece } => {
            let t = rows(&target, "target rays")?;
            let dim = ray_list_dim(&t, None, "target")?;
            let target = Cone::from_rays(dim, &t).map_err(compute)?;
            let pieces = piece
                .iter()
                .map(|p| Cone::from_rays(dim, &rows(p, "piece rays")?).map_err(compute))
                .collect::<Result<Vec<_>>>()?;
            let v = covers(&target, &pieces).map_err(compute)?;
            match v.witness {
                None => writeln!(out, "covered").unwrap(),
                Some(w) => writeln!(out, "not covered; witness {}", fmt_vec(&w)).unwrap(),
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- domain

fn domain(cmd: DomainCmd) -> Result<String> {
    let mut out = String::new();
    match cmd {
        DomainCmd::Words { group } => {
            let (gens, s) = generators(&group)?;
            let (k, inv) = word_params(&group, s.as_ref())?;
            let words = enumerate_words(&gens, k, inv).map_err(compute)?;
            writeln!(out, "{} elements", words.len()).unwrap();
            for (m, w) in words.iter() {
                let word = if w.is_empty() { "1".to_string() } else { w.join("*") };
                writeln!(out, "{word}: {m}").unwrap();
            }
        }
        DomainCmd::Halfspaces { group } => {
            let (gens, s) = generators(&group)?;
            let (k, inv) = word_params(&group, s.as_ref())?;
            let (l, x) = domain_lattice(&group, s.as_ref())?;
            let words = enumerate_words(&gens, k, inv).map_err(compute)?;
            for h in dirichlet_halfspaces(&l, &x, &words).map_err(compute)? {
                writeln!(out, "{} >= 0", fmt_vec(&h)).unwrap();
            }
        }
        DomainCmd::Compute { group } => {
            let (gens, s) = generators(&group)?;
            let (k, inv) = word_params(&group, s.as_ref())?;
            let (l, x) = domain_lattice(&group, s.as_ref())?;
            let d = dirichlet_domain(&l, &x, &gens, k, inv).map_err(compute)?;
            writeln!(out, "words: {}", d.words).unwrap();
            if d.improper {
                writeln!(out, "no constraints; the domain is the whole space").unwrap();
            }
            for p in &d.positivity {
                let tag = if p.inside { "" } else { "  outside the positive cone" };
                writeln!(out, "{}  norm {}{tag}", fmt_vec(&p.ray), p.norm).unwrap();
            }
            for line in d.cone.lineality() {
                writeln!(out, "line {}", fmt_vec(line)).unwrap();
            }
        }
    }
    Ok(out)
}

fn word_params(g: &GroupArgs, s: Option<&Scenario>) -> Result<(usize, bool)> {
    let sg = s.and_then(|s| s.group.as_ref());
    let k = g.k.or(sg.and_then(|x| x.k)).ok_or_else(|| CliError::Usage("give the word length with --k".into()))?;
    let inv = g.inverses || sg.is_some_and(|x| x.include_inverses);
    Ok((k, inv))
}

fn domain_lattice(g: &GroupArgs, s: Option<&Scenario>) -> Result<(IntLattice, Vec<BigInt>)> {
    let l = match (&g.gram, s.and_then(|s| s.lattice.clone())) {
        (Some(t), _) => lattice_from(t)?,
        (None, Some(l)) => l,
        (None, None) => return Err(CliError::Usage("give the lattice with --gram".into())),
    };
    let x = match (&g.x, s.and_then(|s| s.group.as_ref()).and_then(|g| g.x.clone())) {
        (Some(t), _) => vector(t, "x")?,
        (None, Some(x)) => x,
        (None, None) => return Err(CliError::Usage("give the base point with --x".into())),
    };
    Ok((l, x))
}

// ---------------------------------------------------------------- verify

fn verify(a: VerifyArgs) -> Result<(i32, String)> {
    if a.list {
        let mut out = String::new();
        for n in builtin_names() {
            writeln!(out, "{n}").unwrap();
        }
        return Ok((EXIT_OK, out));
    }
    let s = match (&a.builtin, &a.file) {
        (Some(name), None) => Scenario::builtin(name).map_err(compute)?,
        (None, Some(path)) => Scenario::from_path(path).map_err(compute)?,
        _ => return Err(CliError::Usage("give exactly one of --builtin NAME or FILE".into())),
    };
    let sections: Vec<Section> = if a.section.is_empty() {
        Section::ALL.to_vec()
    } else {
        a.section.iter().map(|s| s.parse::<Section>().map_err(CliError::Usage)).collect::<Result<_>>()?
    };
    let report = scenarios::run(&s, &sections);
    let text = match a.format {
        OutputFormat::Text => format!("{report}\n"),
        OutputFormat::Json => format!("{}\n", report.to_json()),
    };
    Ok((if report.passed() { EXIT_OK } else { EXIT_FAILED }, text))
}
