//! Checkers for the fixed-vector, spatial, unital, unitization and summary
//! relations between numerical ranges.
//!
//! Equalities between sets are never asserted from sampling alone: a
//! sampled hull is always compared against an independently constructed
//! oracle polygon or disk.

use std::f64::consts::E;
use std::sync::Arc;

use crate::algebra::{Algebra, Element, NormSpec};
use crate::duality::{Functional, FEAS_TOL};
use crate::geometry::{convex_hull, hausdorff, ConvexPolygon, PointIndex};
use crate::matrix::Matrix;
use crate::range::{spatial_range_with, support_range_at_identity, v1_at_identity, v_at, IdentityRange, PointCloud, RangeEstimate, RangeOptions, T_SCHEDULE};
use crate::unitize::{unitization_norm_eval, unitize, unitize_forced, Flavor, Unitization, UnitizedElement};
use crate::{Error, Result, C64};

use super::{CheckItem, CheckReport, ToleranceProfile};

/// Relative gap below which `||a||_op` and `||a||` count as equal in the
/// regularity test.
const REGULAR_TOL: f64 = 1e-6;
/// Functional pairs tested for convexity of `V(a; x)`.
const CONVEXITY_PAIRS: usize = 200;

const ZERO: C64 = C64::new(0.0, 0.0);

fn instance_label(algebra: &Algebra, a: &Element) -> String {
    let coords: Vec<String> = a.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
    format!("{} [{}], a = ({})", algebra.name().unwrap_or("A"), algebra.norm_spec().describe(), coords.join(", "))
}

/// Sampled `V(a)` at the profile's sizes: closed-form duality sets use
/// `n_sphere`/`n_dual`, numeric ones the smaller numeric sizes.
fn sampled_range(algebra: &Algebra, a: &Element, profile: &ToleranceProfile) -> Result<RangeEstimate> {
    let opts = match algebra.norm_spec() {
        NormSpec::P(_) => RangeOptions { n_sphere: profile.n_sphere, n_dual: profile.n_dual, seed: profile.seed, ..Default::default() },
        _ => RangeOptions { n_sphere: profile.n_sphere_numeric, n_dual: profile.n_probes, seed: profile.seed, ..Default::default() },
    };
    spatial_range_with(algebra, a, &opts)
}

fn oracle(u: &Unitization, a: &Element, lambda: C64, profile: &ToleranceProfile) -> Result<IdentityRange> {
    let b = u.embed(&UnitizedElement::new(a.clone(), lambda))?;
    support_range_at_identity(u.algebra(), &u.identity(), &b, profile.n_dirs, &T_SCHEDULE)
}

/// Largest value of the oracle support function: the numerical radius up
/// to the direction sampling.
fn oracle_radius(r: &IdentityRange) -> f64 {
    r.support.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn max_pointwise_diff(p: &PointCloud, q: &PointCloud, f: impl Fn(C64) -> C64) -> f64 {
    if p.len() != q.len() {
        return f64::INFINITY;
    }
    p.points.iter().zip(&q.points).map(|(a, b)| (b.z - f(a.z)).norm()).fold(0.0, f64::max)
}

fn cloud_distance(from: &[C64], to: &[C64], cell: f64) -> Result<f64> {
    if from.is_empty() {
        return Ok(0.0);
    }
    Ok(PointIndex::new(to, cell)?.max_distance_from(from).0)
}

fn max_excess(poly: &ConvexPolygon, points: &[C64]) -> Result<f64> {
    Ok(poly.max_excess(points.iter().copied())?.0)
}

/// Inputs of [`check_thm21`].
#[derive(Debug, Clone)]
pub struct Thm21Input {
    pub a: Element,
    pub b: Element,
    pub alpha: C64,
    pub x: Element,
    /// Second unit vector for the phase-invariance test.
    pub y: Option<Element>,
    /// Sequence `a_n -> a`.
    pub sequence: Vec<Element>,
}

/// Properties of `V(a; x)` at a fixed unit vector.
pub fn check_thm21(algebra: &Algebra, input: &Thm21Input, profile: &ToleranceProfile) -> Result<CheckReport> {
    profile.validate()?;
    let (n_dual, seed) = (profile.n_dual, profile.seed);
    let Thm21Input { a, b, alpha, x, y, sequence } = input;
    let mut r = CheckReport::new("thm2.1", instance_label(algebra, a), profile);
    r.element_witness("x", x);

    let va = v_at(algebra, a, x, n_dual, seed)?;
    let vaa = v_at(algebra, &a.scale(*alpha), x, n_dual, seed)?;
    r.push(CheckItem::le("(1) V(alpha a; x) = alpha V(a; x)", max_pointwise_diff(&va, &vaa, |z| z * alpha), profile.exact_tol));
    let vb = v_at(algebra, b, x, n_dual, seed)?;
    let vab = v_at(algebra, &a.add(b), x, n_dual, seed)?;
    let sub = if va.len() == vb.len() && va.len() == vab.len() {
        (0..va.len()).map(|i| (vab.points[i].z - va.points[i].z - vb.points[i].z).norm()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    r.push(CheckItem::le("(1) phi((a+b)x) = phi(ax) + phi(bx)", sub, profile.exact_tol));

    let zs = va.values();
    let hull = convex_hull(&zs);
    let pairs = midpoint_pairs(zs.len());
    let mids: Vec<C64> = pairs.iter().map(|&(i, j)| (zs[i] + zs[j]) / 2.0).collect();
    r.push(CheckItem::le("(2) midpoints lie in the hull", max_excess(&hull, &mids)?.max(0.0), profile.inclusion_tol));
    if let Some(p) = algebra.p_exponent() {
        let ax = algebra.multiply(a, x)?;
        let (mut feas, mut realized) = (0.0_f64, 0.0_f64);
        for (&(i, j), m) in pairs.iter().zip(&mids) {
            let avg = Functional::combine(&[(0.5, va.functional(&va.points[i])), (0.5, va.functional(&va.points[j]))]);
            let pairing = (avg.apply_raw(x) - C64::new(1.0, 0.0)).norm();
            let norm_excess = (p.dual().norm(avg.coeffs()) - 1.0).abs();
            feas = feas.max(pairing).max(norm_excess);
            realized = realized.max((avg.apply_raw(&ax) - m).norm());
        }
        r.push(CheckItem::le("(2) averaged functionals are norming", feas, profile.exact_tol));
        r.push(CheckItem::le("(2) averaged functionals realize the midpoints", realized, profile.exact_tol));
    } else {
        r.note("(2) realization by averaged functionals needs closed-form duality sets; hull test only");
    }

    if let Some(y) = y {
        r.element_witness("y", y);
        let (phase, dependence) = best_phase(x, y);
        let vy = v_at(algebra, a, y, n_dual, seed)?;
        let (zx, zy) = (va.values(), vy.values());
        let cell = profile.inclusion_tol;
        let dist = cloud_distance(&zx, &zy, cell)?.max(cloud_distance(&zy, &zx, cell)?);
        r.measure("(3) dependence residual min |y - alpha x|", dependence);
        r.measure("(3) distance between V(a;x) and V(a;y)", dist);
        if dependence <= profile.exact_tol {
            r.witness("(3) alpha", &[phase]);
            r.push(CheckItem::le("(3) V(a;x) = V(a;y) for y = alpha x", dist, profile.exact_tol));
        } else {
            r.note("(3) x and y are linearly independent; the theorem makes no claim");
        }
    }

    if !sequence.is_empty() {
        let mut union = Vec::new();
        for an in sequence {
            union.extend(v_at(algebra, an, x, n_dual, seed)?.values());
        }
        let forward = cloud_distance(&zs, &union, profile.inclusion_tol)?;
        let reverse = cloud_distance(&union, &zs, profile.inclusion_tol)?;
        r.push(CheckItem::le("(5) V(a;x) within the closure of the union of V(a_n;x)", forward, profile.inclusion_tol));
        r.measure("(5) distance from the union back to V(a;x)", reverse);
    }
    Ok(r)
}

/// Deterministic index pairs: neighbours, then a fixed stride.
fn midpoint_pairs(n: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return vec![(0, 0); n];
    }
    let mut out: Vec<(usize, usize)> = (0..n.min(CONVEXITY_PAIRS / 2)).map(|i| (i, (i + 1) % n)).collect();
    let stride = (n / 2).max(1);
    out.extend((0..n.min(CONVEXITY_PAIRS / 2)).map(|i| (i, (i + stride) % n)));
    out
}

/// `alpha` minimizing `||y - alpha x||_2` with `|alpha| = 1`, and the
/// residual `max_k |y_k - alpha x_k|`.
fn best_phase(x: &[C64], y: &[C64]) -> (C64, f64) {
    let inner: C64 = x.iter().zip(y).map(|(a, b)| b * a.conj()).sum();
    let alpha = if inner.norm() > 0.0 { inner / inner.norm() } else { C64::new(1.0, 0.0) };
    let res = x.iter().zip(y).map(|(a, b)| (b - alpha * a).norm()).fold(0.0, f64::max);
    (alpha, res)
}

/// Subalgebra spanned by `basis`, in the coordinates of that basis, with
/// the restricted norm. Errors when the span is not closed under products.
pub fn subalgebra(algebra: &Algebra, basis: &[Element]) -> Result<Algebra> {
    let m = basis.len();
    if m == 0 {
        return Err(Error::Empty("subalgebra basis"));
    }
    for b in basis {
        if b.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: b.dim() });
        }
    }
    let mut structure = Vec::with_capacity(m * m * m);
    let mut worst = 0.0_f64;
    for bi in basis {
        for bj in basis {
            let prod = algebra.mul_raw(bi, bj);
            let (coords, res) = coordinates(basis, &prod)?;
            worst = worst.max(res);
            structure.extend(coords);
        }
    }
    if worst > 1e-9 {
        return Err(Error::NotSubalgebra(worst));
    }
    let coordinate_basis = basis.iter().all(|b| b.iter().filter(|z| **z != ZERO).count() == 1 && b.iter().any(|z| *z == C64::new(1.0, 0.0)));
    let distinct = {
        let mut idx: Vec<usize> = basis.iter().filter_map(|b| b.iter().position(|z| *z != ZERO)).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.len() == m
    };
    let norm = match algebra.norm_spec() {
        NormSpec::P(p) if coordinate_basis && distinct => NormSpec::P(*p),
        _ => NormSpec::Restricted { ambient: Arc::new(algebra.clone()), basis: basis.to_vec() },
    };
    Ok(Algebra::new(m, structure, norm)?.with_name(format!("subalgebra of {}", algebra.name().unwrap_or("A"))))
}

/// Least-squares coordinates of `v` in `basis`, with the residual.
fn coordinates(basis: &[Element], v: &[C64]) -> Result<(Vec<C64>, f64)> {
    let b = Matrix::from_columns(&basis.iter().map(|e| e.to_vec()).collect::<Vec<_>>());
    let bh = b.adjoint();
    let gram = bh.mul(&b);
    let rhs = bh.mul_vec(v);
    let coords = gram.solve(&rhs, 1e-12).ok_or_else(|| Error::InvalidArgument("subalgebra basis is not independent".into()))?;
    let back = b.mul_vec(&coords);
    let res = back.iter().zip(v).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    Ok((coords, res))
}

/// Inputs of [`check_thm22`].
#[derive(Debug, Clone)]
pub struct Thm22Input {
    pub a: Element,
    pub b: Element,
    pub alpha: C64,
    /// Basis of a subalgebra containing `a`.
    pub subalgebra: Option<Vec<Element>>,
    pub sequence: Vec<Element>,
}

/// Properties of the spatial range `V(a)`.
pub fn check_thm22(algebra: &Algebra, input: &Thm22Input, profile: &ToleranceProfile) -> Result<CheckReport> {
    profile.validate()?;
    let Thm22Input { a, b, alpha, subalgebra: sub_basis, sequence } = input;
    let mut r = CheckReport::new("thm2.2", instance_label(algebra, a), profile);
    let est = sampled_range(algebra, a, profile)?;
    let zs = est.cloud.values();

    // paired: the same (x, phi) evaluated at alpha a, b and a + b
    let scaled = est.cloud.reevaluate(algebra, &a.scale(*alpha))?;
    r.push(CheckItem::le("(1) V(alpha a) = alpha V(a) on paired samples", max_pointwise_diff(&est.cloud, &scaled, |z| z * alpha), profile.exact_tol));
    let vb = est.cloud.reevaluate(algebra, b)?;
    let vab = est.cloud.reevaluate(algebra, &a.add(b))?;
    let sub = if vab.len() == est.cloud.len() {
        (0..vab.len()).map(|i| (vab.points[i].z - zs[i] - vb.points[i].z).norm()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    r.push(CheckItem::le("(1) phi((a+b)x) = phi(ax) + phi(bx) on paired samples", sub, profile.exact_tol));

    let norm_a = algebra.norm_eval(a)?;
    r.push(CheckItem::le("(2) max |z| <= ||a||", est.radius - norm_a, profile.exact_tol));
    if algebra.p_exponent().is_some() {
        let op = algebra.operator_norm(a, ZERO)?;
        r.push(CheckItem::le("(2) max |z| <= ||a||_op", est.radius - op, profile.exact_tol));
    }
    let min_mod = zs.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    r.measure("(3) min |z| over the cloud", min_mod);
    r.note("(3) compactness has no finite test; closure diagnostics only");

    if let Some(basis) = sub_basis {
        let sub = subalgebra(algebra, basis)?;
        let (a_b, res) = coordinates(basis, a)?;
        if res > 1e-9 {
            return Err(Error::InvalidArgument(format!("a is not in the subalgebra (residual {res:e})")));
        }
        let vb_est = sampled_range(&sub, &Element::new(a_b), profile)?;
        let vbz = vb_est.cloud.values();
        let forward = cloud_distance(&vbz, &zs, profile.inclusion_tol)?;
        r.push(CheckItem::le("(4) V_B(a) within V_A(a)", forward, profile.inclusion_tol));
        r.measure("(4) Hausdorff between the hulls of V_A(a) and V_B(a)", hausdorff(&est.hull, &vb_est.hull, profile.n_dirs)?);
        r.measure("(4) V_B cloud size", vbz.len() as f64);
    }

    if !sequence.is_empty() {
        let mut union = Vec::new();
        for an in sequence {
            union.extend(sampled_range(algebra, an, profile)?.cloud.values());
        }
        let forward = cloud_distance(&zs, &union, profile.inclusion_tol)?;
        r.push(CheckItem::le("(5) V(a) within the closure of the union of V(a_n)", forward, profile.inclusion_tol));
        r.measure("(5) distance from the union back to V(a)", cloud_distance(&union, &zs, profile.inclusion_tol)?);
    }
    Ok(r)
}

/// The unital case: the range equals the range at the identity, with the
/// `1/e` bounds.
pub fn check_cor23(algebra: &Algebra, a: &Element, profile: &ToleranceProfile) -> Result<CheckReport> {
    profile.validate()?;
    let e = algebra.find_identity().ok_or(Error::NonUnital)?;
    let unit = algebra.norm_eval(&e)?;
    if (unit - 1.0).abs() > profile.exact_tol {
        return Err(Error::IdentityNotNormalized(unit));
    }
    let mut r = CheckReport::new("cor2.3", instance_label(algebra, a), profile);
    r.element_witness("identity", &e);
    let est = sampled_range(algebra, a, profile)?;
    let orc = support_range_at_identity(algebra, &e, a, profile.n_dirs, &T_SCHEDULE)?;
    r.push(CheckItem::le(
        "(1) hull of V(a) vs V(a;1) from the identity oracle",
        hausdorff(&est.hull, &orc.polygon, profile.n_dirs)?,
        profile.sample_hausdorff_tol,
    ));
    let norm_a = algebra.norm_eval(a)?;
    r.push(CheckItem::le("(3) nu(a) <= ||a||", est.radius, norm_a + profile.exact_tol));
    r.push(CheckItem::ge("(3) nu(a) >= ||a||/e", est.radius, norm_a / E - profile.inclusion_tol));
    r.measure("nu(a) sampled", est.radius);
    r.measure("nu(a;1) from the oracle", oracle_radius(&orc));
    r.measure("oracle slack", orc.slack);
    r.note(format!("identity oracle polygon has {} vertices", orc.polygon.vertices().len()));
    Ok(r)
}

/// The operator-norm unitization: `co V(a) = V_{A_e^op}(a; 1)` and the
/// `1/e` bounds. With `force`, non-faithful or unital bases are accepted
/// (seminorm regime) and (5), (6) are evaluated even without regularity.
pub fn check_thm24(algebra: &Algebra, a: &Element, lambda: C64, force: bool, profile: &ToleranceProfile) -> Result<CheckReport> {
    profile.validate()?;
    let u = if force { unitize_forced(algebra, Flavor::Op)? } else { unitize(algebra, Flavor::Op)? };
    let mut r = CheckReport::new("thm2.4", instance_label(algebra, a), profile);
    if u.is_seminorm() {
        r.note("seminorm regime: the base fails the faithful/non-unital gate, ||.||_op is only a seminorm on A_e");
    }
    r.note("completeness holds automatically in finite dimension");
    let est = sampled_range(algebra, a, profile)?;
    let orc = oracle(&u, a, ZERO, profile)?;
    r.push(CheckItem::le("(1) hull of V_A(a) vs V_{A_e^op}(a;1)", hausdorff(&est.hull, &orc.polygon, profile.n_dirs)?, profile.sample_hausdorff_tol));
    let nu_orc = oracle_radius(&orc);
    r.push(CheckItem::le("(2) |nu_A(a) - nu_{A_e^op}(a;1)|", (est.radius - nu_orc).abs(), profile.sample_hausdorff_tol));

    let orc_l = oracle(&u, a, lambda, profile)?;
    let nu_l = oracle_radius(&orc_l);
    let op_l = algebra.operator_norm(a, lambda)?;
    r.witness("lambda", &[lambda]);
    r.push(CheckItem::le("(3) nu(a + lambda 1; 1) <= ||a + lambda 1||_op", nu_l, op_l + profile.exact_tol));
    r.push(CheckItem::ge("(3) nu(a + lambda 1; 1) >= ||a + lambda 1||_op / e", nu_l, op_l / E - profile.inclusion_tol));

    let op = algebra.operator_norm(a, ZERO)?;
    r.push(CheckItem::le("(4) nu_A(a) <= ||a||_op", est.radius, op + profile.exact_tol));
    r.push(CheckItem::ge("(4) nu_A(a) >= ||a||_op / e", est.radius, op / E - profile.inclusion_tol));

    let reg = algebra.is_regular(REGULAR_TOL)?;
    r.measure("min ||x||_op / ||x|| over regularity probes", reg.min_ratio);
    if let Some(w) = &reg.witness {
        r.element_witness("non-regularity witness", &w.element);
    }
    if reg.regular || force {
        let suffix = if reg.regular { "" } else { " [norm not regular]" };
        let norm_a = algebra.norm_eval(a)?;
        r.push(CheckItem::le(format!("(5) nu_A(a) <= ||a||{suffix}"), est.radius, norm_a + profile.exact_tol));
        r.push(CheckItem::ge(format!("(5) nu_A(a) >= ||a|| / e{suffix}"), est.radius, norm_a / E - profile.inclusion_tol));
        let d0 = est.hull.signed_distance(ZERO)?;
        r.push(CheckItem::le(format!("(6) 0 in the closed convex hull of V_A(a){suffix}"), d0, profile.inclusion_tol));
    } else {
        r.note("norm is not regular on the probe set: (5) and (6) do not apply");
    }
    r.measure("nu_A(a) sampled", est.radius);
    r.measure("nu(a;1) from the oracle", nu_orc);
    r.measure("oracle slack", orc.slack);
    Ok(r)
}

/// The `l1` unitization: `co(V(a) u {0})` lies in the disk `V_{A_e^1}(a;1)`.
pub fn check_thm25(algebra: &Algebra, a: &Element, lambda: C64, profile: &ToleranceProfile) -> Result<CheckReport> {
    profile.validate()?;
    if let Some(identity) = algebra.find_identity() {
        return Err(Error::Unital { identity });
    }
    let u = unitize(algebra, Flavor::L1)?;
    let mut r = CheckReport::new("thm2.5", instance_label(algebra, a), profile);
    let est = sampled_range(algebra, a, profile)?;
    let disk = v1_at_identity(algebra, a, ZERO)?;
    let mut pts: Vec<C64> = est.hull.vertices().to_vec();
    pts.push(ZERO);
    let with_zero = convex_hull(&pts);
    let excess = with_zero.vertices().iter().map(|z| disk.signed_distance(*z)).fold(f64::NEG_INFINITY, f64::max);
    r.push(CheckItem::le("(1) co(V(a) u {0}) within V_{A_e^1}(a;1)", excess, profile.exact_tol));
    r.measure("(1) Hausdorff between co(V(a) u {0}) and the disk", hausdorff(&with_zero, &disk.polygon, profile.n_dirs)?);

    let disk_l = v1_at_identity(algebra, a, lambda)?;
    let orc = oracle(&u, a, lambda, profile)?;
    r.push(CheckItem::le("disk formula vs identity oracle on A_e^1", hausdorff(&orc.polygon, &disk_l.polygon, profile.n_dirs)?, profile.sample_hausdorff_tol));
    let norm_l = unitization_norm_eval(&u, &UnitizedElement::new(a.clone(), lambda))?;
    let nu_l = disk_l.polygon.max_modulus();
    r.witness("lambda", &[lambda]);
    r.push(CheckItem::le("(2) |nu(a + lambda 1; 1) - ||a + lambda 1||_1|", (nu_l - norm_l).abs(), 1e-6));
    r.push(CheckItem::ge("(2) nu(a + lambda 1; 1) >= ||a + lambda 1||_1 / e", nu_l, norm_l / E));
    let norm_a = algebra.norm_eval(a)?;
    let nu0 = disk.polygon.max_modulus();
    r.push(CheckItem::le("(3) |nu(a; 1) - ||a|||", (nu0 - norm_a).abs(), 1e-6));
    r.push(CheckItem::ge("(3) nu(a; 1) >= ||a|| / e", nu0, norm_a / E));
    r.measure("disk radius", disk.radius);
    Ok(r)
}

/// The six inclusions between `V_A(a)`, `V_{A^op}(a)`, `V_{A_e^op}(a;1)` and
/// `V_{A_e^1}(a;1)`. The `A^op` range uses numeric norming functionals, so
/// its inclusions allow a feasibility slack.
pub fn check_thm26(algebra: &Algebra, a: &Element, lambda: C64, profile: &ToleranceProfile) -> Result<CheckReport> {
    profile.validate()?;
    if algebra.p_exponent().is_none() {
        return Err(Error::UnsupportedNorm("the summary check"));
    }
    let u = unitize(algebra, Flavor::Op)?;
    let mut r = CheckReport::new("thm2.6", instance_label(algebra, a), profile);
    let est = sampled_range(algebra, a, profile)?;
    let orc = oracle(&u, a, ZERO, profile)?;
    r.push(CheckItem::le("(1) hull of V_A(a) vs V_{A_e^op}(a;1)", hausdorff(&est.hull, &orc.polygon, profile.n_dirs)?, profile.sample_hausdorff_tol));

    let op_alg = algebra.with_norm(NormSpec::InducedOperator(Arc::new(algebra.clone())))?.with_name(format!("{}^op", algebra.name().unwrap_or("A")));
    let vop = sampled_range(&op_alg, a, profile)?;
    let vz = vop.cloud.values();
    let op = algebra.operator_norm(a, ZERO)?;
    let slack = 2.0 * FEAS_TOL * (1.0 + op);
    r.measure("A^op cloud size", vz.len() as f64);
    r.measure("A^op unit vectors without accepted functionals", vop.cloud.meta.skipped as f64);
    r.measure("feasibility slack", slack);
    r.note("A^op norming functionals are numeric; their dual norms are sampled lower bounds");
    let tol = profile.inclusion_tol + slack;
    r.push(CheckItem::le("(2) V_{A^op}(a) within co V_A(a)", max_excess(&est.hull, &vz)?, tol));

    let mut pts: Vec<C64> = est.hull.vertices().to_vec();
    pts.push(ZERO);
    let norm_a = algebra.norm_eval(a)?;
    let excess3 = pts.iter().map(|z| z.norm() - norm_a).fold(f64::NEG_INFINITY, f64::max);
    r.push(CheckItem::le("(3) co(V_A(a) u {0}) within V_{A_e^1}(a;1)", excess3, profile.exact_tol));
    r.push(CheckItem::le("(4) V_{A^op}(a) within V_{A_e^op}(a;1)", max_excess(&orc.polygon, &vz)?, tol));
    let excess5 = vz.iter().map(|z| z.norm() - norm_a).fold(f64::NEG_INFINITY, f64::max);
    r.push(CheckItem::le("(5) V_{A^op}(a) within V_{A_e^1}(a;1)", excess5, tol));

    let orc_l = oracle(&u, a, lambda, profile)?;
    let shifted = orc.polygon.scale_translate(C64::new(1.0, 0.0), lambda);
    r.witness("lambda", &[lambda]);
    r.push(CheckItem::le(
        "(6) V_{A_e^op}(a + lambda 1; 1) = V_{A_e^op}(a; 1) + lambda",
        hausdorff(&orc_l.polygon, &shifted, profile.n_dirs)?,
        profile.sample_hausdorff_tol,
    ));
    let disk_l = v1_at_identity(algebra, a, lambda)?;
    let excess6 = orc_l.polygon.vertices().iter().map(|z| disk_l.signed_distance(*z)).fold(f64::NEG_INFINITY, f64::max);
    r.push(CheckItem::le("(6) V_{A_e^op}(a + lambda 1; 1) within V_{A_e^1}(a + lambda 1; 1)", excess6, profile.inclusion_tol));
    Ok(r)
}
