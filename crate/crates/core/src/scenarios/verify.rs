use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::schema::OrderSpec;
use super::{Check, Scenario, Status};
use crate::chow::{base_curve_class, curve_genus, parse_class};
use crate::cone::{covers, dirichlet_domain, dual, fmt_vec, quotient_image, Cone, RayVec};
use crate::lattice::{
    certifies_modulus, certify_no_norm, disc_action, discriminant_group, element_order, evaluate_at_slope,
    find_norm_vectors, is_isometry, positive_cone_boundary, torelli_check, translation_isometry,
    OrderVerdict, TorelliKind,
};
use crate::linalg::{dot, ivec, primitive, IntMatrix, RatMatrix};

fn pass(id: &str, details: impl Into<String>) -> Check {
    Check::new(id, Status::Pass, details)
}

fn fail(id: &str, details: impl Into<String>) -> Check {
    Check::new(id, Status::Fail, details)
}

fn error(id: &str, e: impl std::fmt::Display) -> Check {
    fail(id, format!("error: {e}"))
}

fn fmt_rays(rays: &[RayVec]) -> String {
    let parts: Vec<String> = rays.iter().map(|r| fmt_vec(r)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn canonical_rays(rays: &[Vec<i64>]) -> Vec<RayVec> {
    let mut out: Vec<RayVec> = rays.iter().map(|r| primitive(&ivec(r))).collect();
    out.sort();
    out.dedup();
    out
}

fn sorted_primitive(rays: &[RayVec]) -> Vec<RayVec> {
    let mut out: Vec<RayVec> = rays.iter().map(|r| primitive(r)).collect();
    out.sort();
    out.dedup();
    out
}

fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).expect("validated at load")
}

/// Fibre Gram matrix, genus and base-curve class from the Chow data.
pub fn verify_chow(s: &Scenario) -> Vec<Check> {
    let Some(c) = &s.chow else {
        return Vec::new();
    };
    let e = &s.expected;
    let mut out = Vec::new();

    let id = "chow.gram";
    match &e.gram {
        Some(g) => {
            let want = matrix(g);
            out.push(Check::from_bool(id, c.gram == want, format!("derived {} (expected {want})", c.gram)));
        }
        None => out.push(pass(id, format!("derived {}", c.gram))),
    }

    if let Some(want) = e.genus {
        let id = "chow.genus";
        out.push(match curve_genus(&c.h) {
            Ok(g) => Check::from_bool(id, g == BigInt::from(want), format!("genus {g} (expected {want})")),
            Err(err) => error(id, err),
        });
    }

    if let Some(text) = &e.curve_class {
        let id = "chow.curve_class";
        let want = parse_class(text, &c.ring).expect("validated at load");
        out.push(match base_curve_class(&c.h) {
            Ok(got) => Check::from_bool(id, got == want, format!("H^{} = {got} (expected {want})", c.ring.dim() - 1)),
            Err(err) => error(id, err),
        });
    }
    out
}

/// For every model, the cone dual to its named curves must equal the claimed
/// nef cone.
pub fn verify_nef_duality(s: &Scenario) -> Vec<Check> {
    let Some(n1) = &s.n1 else {
        return Vec::new();
    };
    let dim = n1.labels.len();
    s.sqms
        .iter()
        .map(|m| {
            let id = format!("nef.{}", m.name);
            let curves: Vec<RayVec> =
                m.dual_curves.iter().map(|c| n1.curve(c).expect("validated at load").pairing.clone()).collect();
            let result = (|| {
                let curve_cone = Cone::from_rays(dim, &curves)?;
                let nef = dual(&curve_cone, &RatMatrix::identity(dim))?;
                let claimed = Cone::from_rays(dim, &m.nef_rays)?;
                Ok::<_, crate::cone::ConeError>((nef.equal(&claimed)?, nef))
            })();
            match result {
                Ok((true, nef)) => pass(&id, format!("dual of [{}] = {nef}", m.dual_curves.join(", "))),
                Ok((false, nef)) => fail(
                    &id,
                    format!("dual of [{}] is {nef}, claimed {}", m.dual_curves.join(", "), fmt_rays(&m.nef_rays)),
                ),
                Err(e) => error(&id, e),
            }
        })
        .collect()
}

/// Movable cone given by inequalities against its claimed generators.
pub fn verify_finite_case(s: &Scenario) -> Vec<Check> {
    let Some(m) = &s.expected.movable else {
        return Vec::new();
    };
    let dim = m.inequalities[0].len();
    let ineqs: Vec<RayVec> = m.inequalities.iter().map(|r| ivec(r)).collect();
    let claimed_rays = canonical_rays(&m.rays);
    let ineq_cone = match Cone::from_facets(dim, &ineqs) {
        Ok(c) => c,
        Err(e) => return vec![error("movable.rays", e)],
    };

    if m.mode == "exact" {
        let got = ineq_cone.rays().to_vec();
        let ok = got == claimed_rays && ineq_cone.lineality().is_empty();
        let details = format!("rays {} (expected {})", fmt_rays(&got), fmt_rays(&claimed_rays));
        return vec![Check::from_bool("movable.rays", ok, details)];
    }

    let mut out = Vec::new();
    let bad: Vec<RayVec> = claimed_rays
        .iter()
        .filter(|r| ineqs.iter().any(|h| dot(h, r).is_negative()))
        .cloned()
        .collect();
    out.push(Check::from_bool(
        "movable.generators",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all {} claimed rays satisfy the inequalities", claimed_rays.len())
        } else {
            format!("rays violating the inequalities: {}", fmt_rays(&bad))
        },
    ));

    let claimed = match Cone::from_rays(dim, &claimed_rays) {
        Ok(c) => c,
        Err(e) => {
            out.push(error("movable.containment", e));
            return out;
        }
    };
    let contained = ineq_cone.contains_cone(&claimed).unwrap_or(false);
    out.push(Check::from_bool(
        "movable.containment",
        contained,
        format!("claimed cone {} inside the inequality cone", if contained { "lies" } else { "does not lie" }),
    ));

    let redundant: Vec<RayVec> = claimed_rays.iter().filter(|r| !claimed.rays().contains(r)).cloned().collect();
    let tight: Vec<String> = claimed_rays
        .iter()
        .map(|r| {
            let n = ineqs.iter().filter(|h| dot(h, r).is_zero()).count();
            format!("{}:{n}", fmt_vec(r))
        })
        .collect();
    out.push(Check::from_bool(
        "movable.tightness",
        redundant.is_empty(),
        if redundant.is_empty() {
            format!("no claimed ray is redundant; tight inequalities per ray {}", tight.join(" "))
        } else {
            format!("redundant claimed rays {}", fmt_rays(&redundant))
        },
    ));

    let witness = ineq_cone.rays().iter().find(|r| !claimed.member(r).unwrap_or(true)).cloned();
    out.push(match witness {
        None => pass("movable.equality", format!("inequality cone equals {claimed}")),
        Some(w) => {
            let expected = m.witness.as_ref().map(|x| ivec(x));
            match expected {
                Some(x) if x != w => fail(
                    "movable.equality",
                    format!("inequality cone is larger; witness {} (expected {})", fmt_vec(&w), fmt_vec(&x)),
                ),
                _ => Check::new(
                    "movable.equality",
                    Status::Flagged,
                    format!(
                        "inequalities define {ineq_cone}, strictly larger than the claimed cone; witness {}",
                        fmt_vec(&w)
                    ),
                ),
            }
        }
    });
    out
}

/// Lattice-side results followed by the Dirichlet domain.
pub fn verify_infinite_case(s: &Scenario) -> Vec<Check> {
    let mut out = verify_lattice(s);
    out.extend(verify_domain(s));
    out
}

pub(super) fn verify_lattice(s: &Scenario) -> Vec<Check> {
    let Some(l) = &s.lattice else {
        return Vec::new();
    };
    let e = &s.expected;
    let mut out = Vec::new();

    if let Some(g) = &e.gram {
        let want = matrix(g);
        out.push(Check::from_bool(
            "lattice.gram",
            *l.gram() == want,
            format!("gram {} (expected {want})", l.gram()),
        ));
    }

    if let Some(mt) = &e.minus_two {
        let minus_two = BigInt::from(-2);
        if let Some(want) = &mt.solutions {
            let got = find_norm_vectors(l, &minus_two, mt.bound);
            let want = canonical_sorted(want);
            out.push(Check::from_bool(
                "lattice.minus_two.search",
                got == want,
                format!("(-2)-vectors in the box of radius {}: {} (expected {})", mt.bound, fmt_rays(&got), fmt_rays(&want)),
            ));
        }
        let got = certify_no_norm(l, &minus_two, mt.max_modulus);
        let show = |c: Option<u64>| c.map_or("none".to_string(), |m| format!("mod {m}"));
        out.push(Check::from_bool(
            "lattice.minus_two.certificate",
            got == mt.certificate,
            format!("smallest certificate up to {}: {} (expected {})", mt.max_modulus, show(got), show(mt.certificate)),
        ));
        for &m in &mt.extra_moduli {
            let ok = certifies_modulus(l, &minus_two, m);
            out.push(Check::from_bool(
                &format!("lattice.minus_two.modulus.{m}"),
                ok,
                format!("v.v = -2 (mod {m}) {}", if ok { "has no solution" } else { "has solutions" }),
            ));
        }
    }

    if let Some(g) = &s.group {
        for (label, m) in &g.generators {
            let id = format!("lattice.isometry.{label}");
            out.push(match is_isometry(l, m) {
                Ok(ok) => Check::from_bool(&id, ok, format!("M^T G M {} G", if ok { "=" } else { "!=" })),
                Err(err) => error(&id, err),
            });
        }
        for (label, want) in &e.orders {
            let id = format!("lattice.order.{label}");
            let want = match want {
                OrderSpec::Finite(k) => OrderVerdict::Finite(*k),
                OrderSpec::Word(_) => OrderVerdict::Infinite,
            };
            out.push(match element_order(g.generator(label).expect("validated at load")) {
                Ok(got) => Check::from_bool(&id, got == want, format!("{got} (expected {want})")),
                Err(err) => error(&id, err),
            });
        }
    }

    if let Some(want) = &e.disc_factors {
        let d = discriminant_group(l);
        let want: Vec<BigInt> = want.iter().map(|&x| BigInt::from(x)).collect();
        out.push(Check::from_bool(
            "lattice.disc_group",
            d.factors == want,
            format!("invariant factors {} of order {} (expected {})", fmt_vec(&d.factors), d.order, fmt_vec(&want)),
        ));
    }

    if let Some(g) = &s.group {
        for (label, want) in &e.disc_action {
            let id = format!("lattice.disc_action.{label}");
            out.push(match disc_action(l, g.generator(label).expect("validated at load")) {
                Ok(a) => Check::from_bool(&id, a.kind.to_string() == *want, format!("acts by {} (expected {want})", a.kind)),
                Err(err) => error(&id, err),
            });
        }
        for (label, t) in &e.torelli {
            let id = format!("lattice.torelli.{label}");
            let nodal: Vec<RayVec> = t.nodal.iter().map(|v| ivec(v)).collect();
            out.push(match torelli_check(l, g.generator(label).expect("validated at load"), &nodal) {
                Ok(v) => {
                    let got = match v.kind {
                        TorelliKind::Induces => "induces",
                        TorelliKind::PowerInduces { .. } => "power-induces",
                        TorelliKind::Fails(_) => "fails",
                    };
                    Check::from_bool(&id, got == t.verdict, format!("{v} (expected {})", t.verdict))
                }
                Err(err) => error(&id, err),
            });
        }
    }

    if let Some(want) = &e.boundary {
        out.push(match positive_cone_boundary(l) {
            Ok((a, b)) => {
                let isotropic = [&a, &b].iter().all(|t| evaluate_at_slope(l, t).map(|v| v.is_zero()).unwrap_or(false));
                let got = [a.to_string(), b.to_string()];
                Check::from_bool(
                    "lattice.boundary",
                    isotropic && got[..] == want[..],
                    format!("isotropic slopes {}, {} (expected {}, {})", got[0], got[1], want[0], want[1]),
                )
            }
            Err(err) => error("lattice.boundary", err),
        });
    }

    if let Some(g) = &s.group {
        for (i, sc) in e.spot_checks.iter().enumerate() {
            let id = format!("lattice.spot_check.{i}");
            let m = g.generator(&sc.matrix).expect("validated at load");
            let v = ivec(&sc.vector);
            let want = ivec(&sc.image);
            let got = m.mul_vec(&v).expect("validated at load");
            out.push(Check::from_bool(
                &id,
                got == want,
                format!("{} * {} = {} (expected {})", sc.matrix, fmt_vec(&v), fmt_vec(&got), fmt_vec(&want)),
            ));
        }
        if let Some(t) = &e.translation {
            let want = g.generator(&t.matrix).expect("validated at load");
            out.push(match translation_isometry(l, &ivec(&t.f), &ivec(&t.y)) {
                Ok(m) => Check::from_bool(
                    "lattice.translation",
                    &m == want,
                    format!("T(f={}, y={}) = {m} (expected {} = {want})", fmt_vec(&ivec(&t.f)), fmt_vec(&ivec(&t.y)), t.matrix),
                ),
                Err(err) => error("lattice.translation", err),
            });
        }
    }
    out
}

fn canonical_sorted(rows: &[Vec<i64>]) -> Vec<RayVec> {
    let mut out: Vec<RayVec> = rows.iter().map(|r| ivec(r)).collect();
    out.sort();
    out
}

pub(super) fn verify_domain(s: &Scenario) -> Vec<Check> {
    let Some(l) = &s.lattice else {
        return Vec::new();
    };
    let e = &s.expected;
    let mut out = Vec::new();

    for (i, r) in e.domain_positivity.iter().enumerate() {
        let v = ivec(&r.ray);
        let norm = l.norm(&v).expect("validated at load");
        out.push(Check::from_bool(
            &format!("domain.ray_norm.{i}"),
            norm == BigInt::from(r.norm) && !norm.is_negative(),
            format!("{}^2 = {norm} (expected {})", fmt_vec(&v), r.norm),
        ));
    }

    let Some(g) = &s.group else {
        return out;
    };
    let (Some(k), Some(x)) = (g.k, &g.x) else {
        return out;
    };
    match dirichlet_domain(l, x, &g.generators, k, g.include_inverses) {
        Ok(d) => {
            if let Some(want) = &e.dirichlet_rays {
                let want = canonical_rays(want);
                let got = d.cone.rays().to_vec();
                let ok = got == want && d.cone.lineality().is_empty();
                out.push(Check::from_bool(
                    "domain.dirichlet",
                    ok,
                    format!("D(x={}, k={k}) = {} (expected {})", fmt_vec(x), d.cone, fmt_rays(&want)),
                ));
            }
            if let Some(want) = e.word_count {
                out.push(Check::from_bool(
                    "domain.word_count",
                    d.words == want,
                    format!("{} distinct group elements of word length <= {k} (expected {want})", d.words),
                ));
            }
            let norms: Vec<String> = d.positivity.iter().map(|p| format!("{}^2={}", fmt_vec(&p.ray), p.norm)).collect();
            out.push(Check::from_bool(
                "domain.positivity",
                !d.improper && d.all_rays_positive(),
                if d.improper {
                    "no word gave a constraint; the domain is the whole space".to_string()
                } else {
                    format!("rays in the closed positive cone: {}", norms.join(" "))
                },
            ));
        }
        Err(err) => out.push(error("domain.dirichlet", err)),
    }
    out
}

/// The checklist for lifting a covering of the fibre's cone to the total
/// space: (a) nef cones are consistent polyhedral data, (b) `-K` is nef on
/// every model, (c) the named K-trivial curves are K-trivial, (d) the images
/// of the nef cones cover the target cone.
pub fn verify_lifting_conditions(s: &Scenario) -> Vec<Check> {
    let Some(n1) = &s.n1 else {
        return Vec::new();
    };
    if s.sqms.is_empty() {
        return Vec::new();
    }
    let dim = n1.labels.len();
    let mut out = Vec::new();
    let Some(k) = &n1.anticanonical else {
        out.push(fail("lifting.anticanonical", "no anticanonical class"));
        return out;
    };
    let mut nefs = Vec::new();

    for m in &s.sqms {
        let id = format!("lifting.a.{}", m.name);
        let cone = match Cone::from_rays(dim, &m.nef_rays) {
            Ok(c) => c,
            Err(e) => {
                out.push(error(&id, e));
                continue;
            }
        };
        let back = Cone::from_constraints(dim, cone.facets(), cone.equations());
        let roundtrip = back.as_ref().map(|b| b == &cone).unwrap_or(false);
        let claimed = sorted_primitive(&m.nef_rays);
        let exact = claimed == cone.rays() && cone.lineality().is_empty();
        out.push(Check::from_bool(
            &id,
            roundtrip && exact,
            format!(
                "{} rays, {} facets; roundtrip {}; claimed rays {}",
                cone.rays().len(),
                cone.facets().len(),
                if roundtrip { "ok" } else { "differs" },
                if exact { "are exactly the extremal rays" } else { "are not the extremal rays" }
            ),
        ));
        nefs.push((m, cone));
    }

    for (m, cone) in &nefs {
        let id = format!("lifting.b.{}", m.name);
        out.push(match cone.member(k) {
            Ok(ok) => Check::from_bool(&id, ok, format!("-K = {} {} Nef({})", fmt_vec(k), if ok { "in" } else { "not in" }, m.name)),
            Err(e) => error(&id, e),
        });
    }

    for (m, _) in &nefs {
        let id = format!("lifting.c.{}", m.name);
        let mut trivial = Vec::new();
        let mut broken = Vec::new();
        for name in &m.dual_curves {
            let c = n1.curve(name).expect("validated at load");
            if !c.k_trivial {
                continue;
            }
            let v = dot(&c.pairing, k);
            if v.is_zero() {
                trivial.push(name.clone());
            } else {
                broken.push(format!("{name}.(-K) = {v}"));
            }
        }
        out.push(if broken.is_empty() {
            pass(
                &id,
                if trivial.is_empty() {
                    "no K-trivial curves named".to_string()
                } else {
                    format!("K-trivial: {}", trivial.join(", "))
                },
            )
        } else {
            fail(&id, broken.join("; "))
        });
    }

    let Some(q) = &s.quotient else {
        return out;
    };
    let kernel_ok = {
        let pk = primitive(&q.kernel_ray);
        let pk_neg: RayVec = pk.iter().map(|x| -x).collect();
        let kk = primitive(k);
        kk == pk || kk == pk_neg
    };
    out.push(Check::from_bool(
        "lifting.kernel",
        kernel_ok,
        format!("kernel ray {} {} -K", fmt_vec(&q.kernel_ray), if kernel_ok { "is proportional to" } else { "is not proportional to" }),
    ));

    let Some(v) = &q.covering_domain else {
        return out;
    };
    let qm = q.matrix.to_rat();
    let target = match Cone::from_rays(q.matrix.rows(), v) {
        Ok(t) => t,
        Err(e) => {
            out.push(error("lifting.d", e));
            return out;
        }
    };
    let images = match nefs.iter().map(|(_, c)| quotient_image(c, &qm)).collect::<Result<Vec<_>, _>>() {
        Ok(i) => i,
        Err(e) => {
            out.push(error("lifting.d", e));
            return out;
        }
    };
    let want = s.expected.coverage.unwrap_or(true);
    out.push(match covers(&target, &images) {
        Ok(verdict) => {
            let shown: Vec<String> =
                nefs.iter().zip(&images).map(|((m, _), c)| format!("q(Nef({})) = {c}", m.name)).collect();
            let mut details = format!("target {target}; {}", shown.join("; "));
            if let Some(w) = &verdict.witness {
                details.push_str(&format!("; uncovered point {}", fmt_vec(w)));
            }
            Check::from_bool("lifting.d", verdict.covered == want, details)
        }
        Err(e) => error("lifting.d", e),
    });
    out
}
