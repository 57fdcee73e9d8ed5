//! Worked examples and counterexamples, each tied to the example item it
//! reproduces, plus the seeded random suite.

use std::f64::consts::E;

use crate::algebra::{random_element, Algebra, Element, Exponent};
use crate::geometry::{convex_hull, direction, hausdorff, ConvexPolygon};
use crate::par::map_indexed;
use crate::range::{support_range_at_identity, v1_at_identity, T_SCHEDULE};
use crate::unitize::{unitize, unitized_multiply, Flavor, UnitizedElement};
use crate::{Error, Exec, Result, C64};

use super::checks::{check_cor23, check_thm21, check_thm22, check_thm24, check_thm25, check_thm26, Thm21Input, Thm22Input};
use super::instances::{random_suite, SuiteDraw};
use super::{CheckItem, CheckReport, ToleranceProfile};

/// One registered example.
#[derive(Debug, Clone, Copy)]
pub struct GalleryCase {
    pub name: &'static str,
    /// Example item reproduced, e.g. `3.1(IV)`.
    pub locator: &'static str,
    pub algebra: &'static str,
    pub elements: &'static str,
    /// Items expected to fail. Every other item must hold.
    pub expected_violations: &'static [&'static str],
    pub run: fn(&ToleranceProfile) -> Result<CheckReport>,
}

const V31_I: &[&str] = &["V(a;x): (5) closure of the union equals V(a;x)", "V(a): (5) closure of the union equals V(a)"];
const V31_II: &[&str] = &["(3) converse: equal ranges force dependence"];
const V31_III: &[&str] = &["(1) co(V(a) u {0}) = V_{A_e^1}(a;1)"];
const V31_IV: &[&str] = &["(6) 0 in the closed convex hull of V_A(a) [norm not regular]"];
const V32_IV: &[&str] = &["(4) V_B(a) = V_A(a)"];

pub const CASES: &[GalleryCase] = &[
    GalleryCase {
        name: "ex3.1",
        locator: "3.1",
        algebra: "C^2, xy = x_1 y, p in {1, 2, inf}",
        elements: "seeded random a",
        expected_violations: &[],
        run: ex31_exact,
    },
    GalleryCase {
        name: "ex3.1-I",
        locator: "3.1(I)",
        algebra: "C^2, xy = x_1 y, p = 1",
        elements: "a = (1,0), a_1 = 0, a_n = a (n >= 2), x = (1,0)",
        expected_violations: V31_I,
        run: ex31_i,
    },
    GalleryCase {
        name: "ex3.1-II",
        locator: "3.1(II)",
        algebra: "C^2, xy = x_1 y, p = inf",
        elements: "a = (1,1), x = (1,0), y = (0,1)",
        expected_violations: V31_II,
        run: ex31_ii,
    },
    GalleryCase {
        name: "ex3.1-III",
        locator: "3.1(III)",
        algebra: "C^2, xy = x_1 y, p = 1, l1 unitization",
        elements: "a = (1,0)",
        expected_violations: V31_III,
        run: ex31_iii,
    },
    GalleryCase {
        name: "ex3.1-IV",
        locator: "3.1(IV)",
        algebra: "C^2, xy = x_1 y, p = 1, forced operator unitization",
        elements: "a = (1,0)",
        expected_violations: V31_IV,
        run: ex31_iv,
    },
    GalleryCase {
        name: "ex3.2-I",
        locator: "3.2(I)",
        algebra: "C^2, xy = x y_1, p = inf",
        elements: "a in {(1,0), (0,1), (1,i)}",
        expected_violations: &[],
        run: ex32_i,
    },
    GalleryCase {
        name: "ex3.2-II",
        locator: "3.2(II)",
        algebra: "C^2, xy = x y_1, p = 1",
        elements: "a in {(1,0), (0,1), (1,i)}",
        expected_violations: &[],
        run: ex32_ii,
    },
    GalleryCase {
        name: "ex3.2-III",
        locator: "3.2(III)",
        algebra: "C^2, xy = x y_1, p = inf and p = 1",
        elements: "a = (1,1)",
        expected_violations: &[],
        run: ex32_iii,
    },
    GalleryCase {
        name: "ex3.2-IV",
        locator: "3.2(IV)",
        algebra: "C^2, xy = x y_1, p = 1, B = C x {0}",
        elements: "a = (1,0)",
        expected_violations: V32_IV,
        run: ex32_iv,
    },
    GalleryCase {
        name: "ex3.2-thm24",
        locator: "3.2",
        algebra: "C^2, xy = x y_1, p in {1, inf}",
        elements: "a in {(1,0), (0,1), (1,i)}, lambda = 1",
        expected_violations: &[],
        run: ex32_thm24,
    },
    GalleryCase {
        name: "ex3.2-thm25",
        locator: "3.2(II)",
        algebra: "C^2, xy = x y_1, p in {1, inf}",
        elements: "a = (0,1), lambda in {0, i}",
        expected_violations: &[],
        run: ex32_thm25,
    },
    GalleryCase {
        name: "ex3.2-thm26",
        locator: "3.2",
        algebra: "C^2, xy = x y_1, p in {1, inf}",
        elements: "(a, lambda) in {((0,1), 1), ((1,0), 0)}",
        expected_violations: &[],
        run: ex32_thm26,
    },
    GalleryCase {
        name: "ex3.3",
        locator: "3.3",
        algebra: "pointwise C^3 and C^2, p = inf",
        elements: "a = 1; a = (1,-1)",
        expected_violations: &[],
        run: ex33,
    },
    GalleryCase {
        name: "ex3.3-unital-l1",
        locator: "3.3",
        algebra: "pointwise C^2, p = inf, l1 unitization of a unital base",
        elements: "a = (1,i), lambda = 1/2",
        expected_violations: &[],
        run: ex33_unital_l1,
    },
    GalleryCase {
        name: "ex3.4",
        locator: "3.4",
        algebra: "pointwise C^50, p = 1",
        elements: "f_n = indicator of {1..10}",
        expected_violations: &[],
        run: ex34,
    },
    GalleryCase {
        name: "ex3.4-nonclosed",
        locator: "3.4",
        algebra: "pointwise C^20, p = 1",
        elements: "a_k = 1/k^2",
        expected_violations: &[],
        run: ex34_nonclosed,
    },
    GalleryCase {
        name: "associativity",
        locator: "3.1, 3.2",
        algebra: "example algebras and their unitizations",
        elements: "all basis triples",
        expected_violations: &[],
        run: associativity,
    },
];

pub fn case_names() -> Vec<&'static str> {
    CASES.iter().map(|c| c.name).collect()
}

pub fn run_case(name: &str, profile: &ToleranceProfile) -> Result<CheckReport> {
    let case = CASES.iter().find(|c| c.name == name).ok_or_else(|| Error::InvalidArgument(format!("unknown case '{name}'")))?;
    profile.validate()?;
    Ok(finish(case, (case.run)(profile), profile))
}

fn finish(case: &GalleryCase, result: Result<CheckReport>, profile: &ToleranceProfile) -> CheckReport {
    let mut report = result.unwrap_or_else(|e| {
        let mut r = CheckReport::new(case.name, case.elements, profile);
        r.push(CheckItem::le(format!("case raised an error: {e}"), f64::INFINITY, 0.0));
        r
    });
    report.locator = Some(case.locator.to_owned());
    report.expect_violations(case.expected_violations);
    report
}

/// Runs every registered case; reports come back in registration order.
pub fn run_gallery(profile: &ToleranceProfile) -> Result<Vec<CheckReport>> {
    profile.validate()?;
    Ok(map_indexed(Exec::default(), CASES.len(), |i| finish(&CASES[i], (CASES[i].run)(profile), profile)))
}

/// Runs the unitization and summary checks on `count` accepted random
/// instances. The first report summarizes the draw.
pub fn run_random_suite(count: usize, profile: &ToleranceProfile) -> Result<(SuiteDraw, Vec<CheckReport>)> {
    profile.validate()?;
    let draw = random_suite(count, profile.seed)?;
    let mut summary = CheckReport::new("random-suite", format!("{count} accepted instances, seed {}", profile.seed), profile);
    summary.measure("drawn", draw.drawn as f64);
    summary.measure("filtered: not faithful", draw.filtered_not_faithful as f64);
    summary.measure("filtered: unital", draw.filtered_unital as f64);
    let per: Vec<Result<Vec<CheckReport>>> = map_indexed(Exec::default(), draw.accepted.len(), |i| {
        let inst = &draw.accepted[i];
        let mut out = vec![
            check_thm24(&inst.algebra, &inst.a, inst.lambda, false, profile)?,
            check_thm25(&inst.algebra, &inst.a, inst.lambda, profile)?,
            check_thm26(&inst.algebra, &inst.a, inst.lambda, profile)?,
        ];
        for r in &mut out {
            r.instance = format!("{}: {}", inst.label(), r.instance);
        }
        Ok(out)
    });
    let mut reports = vec![summary];
    for r in per {
        reports.extend(r?);
    }
    Ok((draw, reports))
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn el(v: &[f64]) -> Element {
    Element::from_real(v)
}

fn ex31(p: Exponent) -> Algebra {
    Algebra::left_first_coordinate(p)
}

fn ex32(p: Exponent) -> Algebra {
    Algebra::right_first_coordinate(2, p)
}

fn p_label(p: Exponent) -> String {
    if p.is_infinite() {
        "p=inf".into()
    } else {
        format!("p={}", p.value())
    }
}

fn a_label(a: &Element) -> String {
    let parts: Vec<String> = a
        .iter()
        .map(|z| match (z.re, z.im) {
            (re, im) if im == 0.0 => format!("{re}"),
            (re, im) if re == 0.0 => format!("{im}i"),
            (re, im) => format!("{re}{im:+}i"),
        })
        .collect();
    format!("a=({})", parts.join(","))
}

fn ex31_exact(profile: &ToleranceProfile) -> Result<CheckReport> {
    let mut r = CheckReport::new("example", "V_A(a) = {a_1} on seeded random a", profile);
    for p in [Exponent::ONE, Exponent::TWO, Exponent::INFINITY] {
        let alg = ex31(p);
        let mut worst = 0.0_f64;
        for k in 0..5 {
            let a = random_element(2, profile.seed.wrapping_add(k));
            let est = crate::range::spatial_range(&alg, &a, profile.n_sphere, profile.n_dual, profile.seed)?;
            worst = est.cloud.points.iter().map(|pt| (pt.z - a[0]).norm()).fold(worst, f64::max);
        }
        r.push(CheckItem::le(format!("{}: max |z - a_1| over V_A(a)", p_label(p)), worst, profile.exact_tol));
    }
    Ok(r)
}

fn ex31_i(profile: &ToleranceProfile) -> Result<CheckReport> {
    let alg = ex31(Exponent::ONE);
    let a = el(&[1.0, 0.0]);
    let x = el(&[1.0, 0.0]);
    let sequence = vec![Element::zeros(2), a.clone()];
    let mut r21 = check_thm21(&alg, &Thm21Input { a: a.clone(), b: Element::zeros(2), alpha: c(1.0, 0.0), x, y: None, sequence: sequence.clone() }, profile)?;
    let gap = r21.measurement("(5) distance from the union back to V(a;x)").unwrap_or(f64::NAN);
    r21.push(CheckItem::le("(5) closure of the union equals V(a;x)", gap, profile.inclusion_tol));
    r21.push(CheckItem::ge("(5) properness gap", gap, 0.9));

    let mut r22 = check_thm22(&alg, &Thm22Input { a: a.clone(), b: Element::zeros(2), alpha: c(1.0, 0.0), subalgebra: None, sequence }, profile)?;
    let gap = r22.measurement("(5) distance from the union back to V(a)").unwrap_or(f64::NAN);
    r22.push(CheckItem::le("(5) closure of the union equals V(a)", gap, profile.inclusion_tol));
    r22.push(CheckItem::ge("(5) properness gap", gap, 0.9));

    let mut r = CheckReport::new("thm2.1+thm2.2", format!("{} [{}], {}", alg.name().unwrap_or("A"), p_label(Exponent::ONE), a_label(&a)), profile);
    r.absorb("V(a;x):", r21);
    r.absorb("V(a):", r22);
    Ok(r)
}

fn ex31_ii(profile: &ToleranceProfile) -> Result<CheckReport> {
    let alg = ex31(Exponent::INFINITY);
    let input = Thm21Input { a: el(&[1.0, 1.0]), b: el(&[0.0, 1.0]), alpha: c(0.0, 1.0), x: el(&[1.0, 0.0]), y: Some(el(&[0.0, 1.0])), sequence: vec![] };
    let mut r = check_thm21(&alg, &input, profile)?;
    let dist = r.measurement("(3) distance between V(a;x) and V(a;y)").unwrap_or(f64::NAN);
    let dependence = r.measurement("(3) dependence residual min |y - alpha x|").unwrap_or(f64::NAN);
    r.push(CheckItem::le("(3) V(a;x) = V(a;y)", dist, profile.exact_tol));
    if dist <= profile.exact_tol {
        r.push(CheckItem::le("(3) converse: equal ranges force dependence", dependence, profile.exact_tol));
    }
    Ok(r)
}

fn ex31_iii(profile: &ToleranceProfile) -> Result<CheckReport> {
    let alg = ex31(Exponent::ONE);
    let a = el(&[1.0, 0.0]);
    let mut r = check_thm25(&alg, &a, c(0.0, 0.0), profile)?;
    let gap = r.measurement("(1) Hausdorff between co(V(a) u {0}) and the disk").unwrap_or(f64::NAN);
    r.push(CheckItem::le("(1) co(V(a) u {0}) = V_{A_e^1}(a;1)", gap, profile.sample_hausdorff_tol));
    r.push(CheckItem::ge("(1) properness gap", gap, 0.9));

    // xy = (x1y1 + x1y3 + x3y1, x1y2 + x2y3 + x3y2, x3y3)
    let u = unitize(&alg, Flavor::L1)?;
    let mut worst = 0.0_f64;
    for k in 0..20 {
        let x = random_element(3, profile.seed.wrapping_add(2 * k));
        let y = random_element(3, profile.seed.wrapping_add(2 * k + 1));
        let expected = [x[0] * y[0] + x[0] * y[2] + x[2] * y[0], x[0] * y[1] + x[1] * y[2] + x[2] * y[1], x[2] * y[2]];
        let prod =
            unitized_multiply(&u, &UnitizedElement::new(Element::new(x[..2].to_vec()), x[2]), &UnitizedElement::new(Element::new(y[..2].to_vec()), y[2]))?;
        let got = [prod.a[0], prod.a[1], prod.lambda];
        worst = got.iter().zip(&expected).map(|(g, e)| (g - e).norm()).fold(worst, f64::max);
    }
    r.push(CheckItem::le("A_e^1 product matches the explicit C^3 formula", worst, profile.exact_tol));
    Ok(r)
}

fn ex31_iv(profile: &ToleranceProfile) -> Result<CheckReport> {
    let alg = ex31(Exponent::ONE);
    let mut r = check_thm24(&alg, &el(&[1.0, 0.0]), c(1.0, 0.0), true, profile)?;
    let faithful = alg.is_faithful();
    r.note(format!(
        "discrepancy: this algebra is not faithful ({} annihilates A from the left), yet the example is offered against (6), whose hypotheses include faithfulness; recorded, not resolved",
        a_label(&faithful.witness.unwrap_or_else(|| Element::zeros(2))).trim_start_matches("a=")
    ));
    let reg = alg.is_regular(1e-6)?;
    let gap = reg.witness.as_ref().map_or(0.0, |w| w.gap);
    r.push(CheckItem::ge("norm is not regular: witness gap", gap, 0.9));
    Ok(r)
}

/// Hull of a dense sample of the closed-form range of the `xy = x y_1`
/// algebra: `a_1 r + a_2 (1 - r) e^{it}` for `l_inf`, `a_1 r + a_2 r e^{it}`
/// for `l_1`.
fn ex32_closed_form(a: &Element, p: Exponent) -> ConvexPolygon {
    const NR: usize = 200;
    const NT: usize = 720;
    let mut pts = Vec::with_capacity((NR + 1) * NT);
    for i in 0..=NR {
        let r = i as f64 / NR as f64;
        for k in 0..NT {
            let e = C64::from_polar(1.0, direction(k, NT));
            let s = if p.is_infinite() { 1.0 - r } else { r };
            pts.push(a[0] * r + a[1] * s * e);
        }
    }
    convex_hull(&pts)
}

fn ex32_elements() -> [Element; 3] {
    [el(&[1.0, 0.0]), el(&[0.0, 1.0]), Element::new(vec![c(1.0, 0.0), c(0.0, 1.0)])]
}

fn ex32_formula(p: Exponent, profile: &ToleranceProfile) -> Result<CheckReport> {
    let alg = ex32(p);
    let mut r = CheckReport::new("example", format!("{} [{}], closed-form V_A(a)", alg.name().unwrap_or("A"), p_label(p)), profile);
    for a in ex32_elements() {
        let est = crate::range::spatial_range(&alg, &a, profile.n_sphere, profile.n_dual, profile.seed)?;
        let closed = ex32_closed_form(&a, p);
        let d = hausdorff(&est.hull, &closed, profile.n_dirs)?;
        r.push(CheckItem::le(format!("{}: Hausdorff(sampled hull, closed form)", a_label(&a)), d, profile.sample_hausdorff_tol));
    }
    Ok(r)
}

fn ex32_i(profile: &ToleranceProfile) -> Result<CheckReport> {
    ex32_formula(Exponent::INFINITY, profile)
}

fn ex32_ii(profile: &ToleranceProfile) -> Result<CheckReport> {
    ex32_formula(Exponent::ONE, profile)
}

fn ex32_iii(profile: &ToleranceProfile) -> Result<CheckReport> {
    let a = el(&[1.0, 1.0]);
    let mut r = CheckReport::new("example", format!("xy = x y_1 under p=inf and p=1, {}", a_label(&a)), profile);
    let (hi, h1) = (ex32_closed_form(&a, Exponent::INFINITY), ex32_closed_form(&a, Exponent::ONE));
    let d = hausdorff(&hi, &h1, profile.n_dirs)?;
    r.push(CheckItem::ge("Hausdorff between the closed-form hulls for p=inf and p=1", d, 0.3));
    let si = crate::range::spatial_range(&ex32(Exponent::INFINITY), &a, profile.n_sphere, profile.n_dual, profile.seed)?;
    let s1 = crate::range::spatial_range(&ex32(Exponent::ONE), &a, profile.n_sphere, profile.n_dual, profile.seed)?;
    r.measure("Hausdorff between the sampled hulls for p=inf and p=1", hausdorff(&si.hull, &s1.hull, profile.n_dirs)?);
    r.push(CheckItem::le("p=inf: Hausdorff(sampled hull, closed form)", hausdorff(&si.hull, &hi, profile.n_dirs)?, profile.sample_hausdorff_tol));
    r.push(CheckItem::le("p=1: Hausdorff(sampled hull, closed form)", hausdorff(&s1.hull, &h1, profile.n_dirs)?, profile.sample_hausdorff_tol));
    Ok(r)
}

fn ex32_iv(profile: &ToleranceProfile) -> Result<CheckReport> {
    let alg = ex32(Exponent::ONE);
    let input = Thm22Input { a: el(&[1.0, 0.0]), b: el(&[0.0, 1.0]), alpha: c(0.0, 1.0), subalgebra: Some(vec![el(&[1.0, 0.0])]), sequence: vec![] };
    let mut r = check_thm22(&alg, &input, profile)?;
    let gap = r.measurement("(4) Hausdorff between the hulls of V_A(a) and V_B(a)").unwrap_or(f64::NAN);
    r.push(CheckItem::le("(4) V_B(a) = V_A(a)", gap, profile.sample_hausdorff_tol));
    r.push(CheckItem::ge("(4) properness gap", gap, 0.9));
    Ok(r)
}

fn combined(theorem: &str, instance: &str, parts: Vec<(String, CheckReport)>, profile: &ToleranceProfile) -> CheckReport {
    let mut r = CheckReport::new(theorem, instance, profile);
    for (prefix, part) in parts {
        r.absorb(&format!("{prefix}:"), part);
    }
    r
}

fn ex32_thm24(profile: &ToleranceProfile) -> Result<CheckReport> {
    let mut parts = Vec::new();
    for p in [Exponent::INFINITY, Exponent::ONE] {
        for a in ex32_elements() {
            parts.push((format!("{} {}", p_label(p), a_label(&a)), check_thm24(&ex32(p), &a, c(1.0, 0.0), false, profile)?));
        }
    }
    Ok(combined("thm2.4", "xy = x y_1", parts, profile))
}

fn ex32_thm25(profile: &ToleranceProfile) -> Result<CheckReport> {
    let a = el(&[0.0, 1.0]);
    let mut one = check_thm25(&ex32(Exponent::ONE), &a, c(0.0, 0.0), profile)?;
    let gap = one.measurement("(1) Hausdorff between co(V(a) u {0}) and the disk").unwrap_or(f64::NAN);
    one.push(CheckItem::le("(1) co(V(a) u {0}) = V_{A_e^1}(a;1)", gap, profile.sample_hausdorff_tol));
    let inf = check_thm25(&ex32(Exponent::INFINITY), &a, c(0.0, 1.0), profile)?;
    Ok(combined("thm2.5", "xy = x y_1", vec![(format!("p=1 {}", a_label(&a)), one), (format!("p=inf {}", a_label(&a)), inf)], profile))
}

fn ex32_thm26(profile: &ToleranceProfile) -> Result<CheckReport> {
    let r_inf = check_thm26(&ex32(Exponent::INFINITY), &el(&[0.0, 1.0]), c(1.0, 0.0), profile)?;
    let alg1 = ex32(Exponent::ONE);
    let a1 = el(&[1.0, 0.0]);
    let mut r_one = check_thm26(&alg1, &a1, c(0.0, 0.0), profile)?;
    let est = crate::range::spatial_range(&alg1, &a1, profile.n_sphere, profile.n_dual, profile.seed)?;
    let mut pts = est.hull.vertices().to_vec();
    pts.push(c(0.0, 0.0));
    let disk = v1_at_identity(&alg1, &a1, c(0.0, 0.0))?;
    r_one.measure("(3) properness gap", hausdorff(&convex_hull(&pts), &disk.polygon, profile.n_dirs)?);
    Ok(combined("thm2.6", "xy = x y_1", vec![("p=inf a=(0,1) lambda=1".into(), r_inf), ("p=1 a=(1,0) lambda=0".into(), r_one)], profile))
}

fn ex33(profile: &ToleranceProfile) -> Result<CheckReport> {
    let alg = Algebra::pointwise(3, Exponent::INFINITY);
    let one = alg.find_identity().ok_or(Error::NonUnital)?;
    let mut r = check_cor23(&alg, &one, profile)?;
    let est = crate::range::spatial_range(&alg, &one, profile.n_sphere, profile.n_dual, profile.seed)?;
    let worst = est.cloud.points.iter().map(|p| (p.z - 1.0).norm()).fold(0.0, f64::max);
    r.push(CheckItem::le("sampled V_A(1) = {1}", worst, profile.exact_tol));
    let orc = support_range_at_identity(&alg, &one, &one, profile.n_dirs, &T_SCHEDULE)?;
    let spread = orc.polygon.vertices().iter().map(|z| (z - 1.0).norm()).fold(0.0, f64::max);
    r.push(CheckItem::le("V(1;1) = {1} from the identity oracle", spread, profile.inclusion_tol));
    r.measure("V(1;1) oracle spread around 1", spread);
    r.push(CheckItem::ge("0 outside co V(1;1): distance", orc.polygon.signed_distance(c(0.0, 0.0))?, 0.9));

    let alg2 = Algebra::pointwise(2, Exponent::INFINITY);
    r.absorb("C^2 p=inf a=(1,-1):", check_cor23(&alg2, &el(&[1.0, -1.0]), profile)?);
    r.note("the unital checks need ||1|| = 1, so pointwise algebras use p=inf; for p < inf, ||1|| = n^{1/p}");
    Ok(r)
}

fn ex33_unital_l1(profile: &ToleranceProfile) -> Result<CheckReport> {
    let base = Algebra::pointwise(2, Exponent::INFINITY);
    let a = Element::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
    let lambda = c(0.5, 0.0);
    let u = unitize(&base, Flavor::L1)?;
    let b = u.embed(&UnitizedElement::new(a.clone(), lambda))?;
    let orc = support_range_at_identity(u.algebra(), &u.identity(), &b, profile.n_dirs, &T_SCHEDULE)?;
    let disk = v1_at_identity(&base, &a, lambda)?;
    let mut r = CheckReport::new("example", format!("l1 unitization of pointwise C^2 [p=inf], {}, lambda=1/2", a_label(&a)), profile);
    r.push(CheckItem::le(
        "identity oracle on A_e^1 vs the disk lambda + ||a|| D",
        hausdorff(&orc.polygon, &disk.polygon, profile.n_dirs)?,
        profile.sample_hausdorff_tol,
    ));
    r.note("the base is unital: no theorem is asserted here, ||.||_1 is still a norm on A_e");
    Ok(r)
}

fn ex34(profile: &ToleranceProfile) -> Result<CheckReport> {
    const N: usize = 50;
    const LEN: usize = 10;
    let alg = Algebra::pointwise(N, Exponent::ONE);
    let f = Element::new((0..N).map(|k| c(if k < LEN { 1.0 } else { 0.0 }, 0.0)).collect());
    let mut r = CheckReport::new("example", format!("pointwise C^{N} [p=1], f_n = indicator of the first {LEN} coordinates"), profile);
    let est = crate::range::spatial_range(&alg, &f, profile.n_sphere, profile.n_dual, profile.seed)?;
    let norm = alg.norm_eval(&f)?;
    let op = alg.operator_norm(&f, c(0.0, 0.0))?;
    r.push(CheckItem::le("nu(f_n) <= 1", est.radius, 1.0 + profile.exact_tol));
    r.push(CheckItem::le("| ||f_n||_1 - n |", (norm - LEN as f64).abs(), 0.0));
    r.push(CheckItem::le("| ||f_n||_op - 1 |", (op - 1.0).abs(), profile.exact_tol));
    let reg = alg.is_regular(1e-6)?;
    let gap = reg.witness.as_ref().map_or(0.0, |w| w.gap);
    if let Some(w) = &reg.witness {
        r.element_witness("non-regularity witness", &w.element);
    }
    r.push(CheckItem::ge("norm is not regular: witness gap", gap, 0.9));
    r.push(CheckItem::le("nu(f_n) < ||f_n||_1 / e: the bound against ||.|| fails without regularity", est.radius, norm / E));
    r.measure("nu(f_n) sampled", est.radius);
    r.note("l^1 is truncated to C^50; ||1||_1 = 50, so the unital bounds are not applied");
    Ok(r)
}

fn ex34_nonclosed(profile: &ToleranceProfile) -> Result<CheckReport> {
    const N: usize = 20;
    let alg = Algebra::pointwise(N, Exponent::ONE);
    let a = Element::new((1..=N).map(|k| c(1.0 / (k * k) as f64, 0.0)).collect());
    let input = Thm22Input { a, b: Element::zeros(N), alpha: c(1.0, 0.0), subalgebra: None, sequence: vec![] };
    let mut r = check_thm22(&alg, &input, profile)?;
    let inf = r.measurement("(3) min |z| over the cloud").unwrap_or(f64::NAN);
    r.push(CheckItem::le("(3) min |z| reaches the smallest coordinate 1/N^2", inf, 1.0 / (N * N) as f64 + profile.exact_tol));
    r.note("in l^1 the infimum 0 is not attained; the truncation only indicates it");
    Ok(r)
}

fn associativity(profile: &ToleranceProfile) -> Result<CheckReport> {
    let mut r = CheckReport::new("example", "associativity defect over all basis triples", profile);
    let mut algebras = vec![
        ex31(Exponent::ONE),
        ex32(Exponent::ONE),
        Algebra::pointwise(3, Exponent::INFINITY),
        unitize(&ex31(Exponent::ONE), Flavor::L1)?.algebra().clone(),
        unitize(&ex32(Exponent::INFINITY), Flavor::Op)?.algebra().clone(),
    ];
    algebras.push(unitize(&ex32(Exponent::ONE), Flavor::L1)?.algebra().clone());
    for alg in &algebras {
        r.push(CheckItem::le(format!("{}: defect", alg.name().unwrap_or("A")), alg.associativity_defect(), 1e-10));
    }
    Ok(r)
}
