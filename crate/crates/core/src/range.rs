//! Spatial numerical ranges `V(a) = {phi(ax) : ||x|| = 1, phi in D(x)}`.
//!
//! A [`PointCloud`] keeps every sampled value together with the unit vector
//! and functional that produced it, so the same `(x, phi)` pairs can be
//! re-evaluated on other elements. Two identity oracles are provided for
//! comparison: the support-function characterization of the range at the
//! identity of a unital algebra, and the closed disk of the `l1`
//! unitization.

use serde::Serialize;

use crate::algebra::{Algebra, Element, Norm, NormSpec};
use crate::duality::{duality_set_exact, sample_duality_set, DualitySet, Functional, NumericDuality, FD_DELTA};
use crate::geometry::{convex_hull, direction, halfplane_intersection, ConvexPolygon, DEFAULT_DIRECTIONS};
use crate::par::map_indexed;
use crate::sampling::{derive_seed, gaussian_vector, normalize, sphere_points, stream_rng, streams};
use crate::{Error, Exec, Result, C64};

/// Default step schedule for the identity oracle, strictly decreasing.
pub const T_SCHEDULE: [f64; 5] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
/// Vertex count of polygonized disks.
pub const DISK_VERTICES: usize = 720;
/// Directions refined by local search in [`spatial_range_with`].
pub const REFINE_DIRECTIONS: usize = 64;
/// Proposals per refined direction.
pub const REFINE_STEPS: usize = 60;

/// One sampled value `z = phi(ax)` of the range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangePoint {
    pub z: C64,
    pub x_index: usize,
    pub phi_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CloudMeta {
    pub algebra: Option<String>,
    pub norm: String,
    pub a: Element,
    pub n_sphere: usize,
    pub n_dual: usize,
    pub seed: u64,
    /// Whether the duality sets are closed-form (otherwise numeric clouds).
    pub exact_duality: bool,
    /// Unit vectors for which no numeric norming functional was accepted.
    pub skipped: usize,
    /// Trailing unit vectors added by local search.
    pub refined: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCloud {
    pub points: Vec<RangePoint>,
    /// Unit vectors, indexed by `x_index`.
    pub xs: Vec<Element>,
    /// Functionals used at each unit vector, indexed by `phi_index`.
    pub functionals: Vec<Vec<Functional>>,
    pub meta: CloudMeta,
}

impl PointCloud {
    pub fn values(&self) -> Vec<C64> {
        self.points.iter().map(|p| p.z).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn functional(&self, p: &RangePoint) -> &Functional {
        &self.functionals[p.x_index][p.phi_index]
    }

    /// The same `(x, phi)` pairs applied to `b`: the points `phi(bx)`.
    pub fn reevaluate(&self, algebra: &Algebra, b: &Element) -> Result<PointCloud> {
        check_element(algebra, b)?;
        let bx: Vec<Vec<C64>> = self.xs.iter().map(|x| algebra.mul_raw(b, x)).collect();
        let points = self.points.iter().map(|p| RangePoint { z: self.functional(p).apply_raw(&bx[p.x_index]), ..*p }).collect();
        let mut meta = self.meta.clone();
        meta.a = b.clone();
        Ok(PointCloud { points, xs: self.xs.clone(), functionals: self.functionals.clone(), meta })
    }

    /// Largest `|z - phi(ax)|` over the recorded pairs.
    pub fn residual(&self, algebra: &Algebra) -> f64 {
        let ax: Vec<Vec<C64>> = self.xs.iter().map(|x| algebra.mul_raw(&self.meta.a, x)).collect();
        self.points.iter().map(|p| (p.z - self.functional(p).apply_raw(&ax[p.x_index])).norm()).fold(0.0, f64::max)
    }
}

/// Sampled range with its hull and radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeEstimate {
    pub cloud: PointCloud,
    pub hull: ConvexPolygon,
    pub radius: f64,
    pub radius_witness: C64,
}

impl RangeEstimate {
    pub fn from_cloud(cloud: PointCloud) -> Result<Self> {
        let zs = cloud.values();
        let (radius, radius_witness) = max_modulus(&zs).ok_or(Error::Empty("range cloud"))?;
        let hull = convex_hull(&zs);
        Ok(Self { cloud, hull, radius, radius_witness })
    }
}

fn max_modulus(zs: &[C64]) -> Option<(f64, C64)> {
    zs.iter().map(|z| (z.norm(), *z)).fold(None, |best: Option<(f64, C64)>, cur| match best {
        Some(b) if b.0 >= cur.0 => Some(b),
        _ => Some(cur),
    })
}

/// Sample sizes and execution strategy for [`spatial_range_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeOptions {
    /// Random sphere directions (structured directions are always added).
    pub n_sphere: usize,
    /// Functionals per unit vector, or finite-difference probes for
    /// non-`p` norms.
    pub n_dual: usize,
    pub seed: u64,
    pub exec: Exec,
    /// Support directions improved by local search over the sphere, 0 to
    /// disable. Only closed-form duality sets are refined.
    pub refine: usize,
}

impl Default for RangeOptions {
    fn default() -> Self {
        Self { n_sphere: 2000, n_dual: 50, seed: 0, exec: Exec::Parallel, refine: REFINE_DIRECTIONS }
    }
}

fn check_element(algebra: &Algebra, a: &Element) -> Result<()> {
    if a.dim() != algebra.dim() {
        return Err(Error::DimensionMismatch { expected: algebra.dim(), found: a.dim() });
    }
    crate::ensure_finite(a, "element")
}

/// A family collapsing to one functional needs only one sample.
fn is_singleton(ds: &DualitySet) -> bool {
    match ds {
        DualitySet::SmoothPoint(_) => true,
        DualitySet::L1Family { free, .. } => free.is_empty(),
        DualitySet::LInfFamily { argmax, .. } => argmax.len() == 1,
        DualitySet::NumericCloud(_) => false,
    }
}

/// Norming functionals for unit vectors of one algebra: closed form for
/// `p`-norms, numeric otherwise.
pub struct FunctionalSource<'a> {
    algebra: &'a Algebra,
    numeric: Option<NumericDuality<'a, Algebra>>,
    n_dual: usize,
    seed: u64,
}

impl<'a> FunctionalSource<'a> {
    pub fn new(algebra: &'a Algebra, n_dual: usize, seed: u64) -> Self {
        let numeric = match algebra.norm_spec() {
            NormSpec::P(_) => None,
            _ => Some(NumericDuality::new(algebra, derive_seed(seed, streams::DUAL_BALL, 0))),
        };
        Self { algebra, numeric, n_dual, seed }
    }

    pub fn is_exact(&self) -> bool {
        self.numeric.is_none()
    }

    /// Duality set of the unit vector `x` registered as number `index`.
    pub fn duality_set(&self, x: &Element, index: usize) -> Result<DualitySet> {
        match &self.numeric {
            None => duality_set_exact(self.algebra, x),
            Some(nd) => nd.norming_functionals(x, self.n_dual, FD_DELTA, self.child_seed(index)),
        }
    }

    /// Functionals used at `x`; `None` when the numeric search found none.
    pub fn functionals(&self, x: &Element, index: usize) -> Result<Option<Vec<Functional>>> {
        let ds = match self.duality_set(x, index) {
            Ok(ds) => ds,
            Err(Error::NoFeasibleFunctional(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let k = if is_singleton(&ds) { 1 } else { self.n_dual };
        let members = match &ds {
            DualitySet::NumericCloud(c) => c.members.clone(),
            _ => sample_duality_set(&ds, k, self.child_seed(index))?,
        };
        Ok(Some(members))
    }

    fn child_seed(&self, index: usize) -> u64 {
        derive_seed(self.seed, streams::DUALITY, index as u64)
    }
}

/// `V(a; x)` sampled with up to `n_dual` functionals.
pub fn v_at(algebra: &Algebra, a: &Element, x: &Element, n_dual: usize, seed: u64) -> Result<PointCloud> {
    cloud_over(algebra, a, vec![x.clone()], n_dual, seed, Exec::Sequential)
}

/// Range cloud over the given unit vectors.
pub fn cloud_over(algebra: &Algebra, a: &Element, xs: Vec<Element>, n_dual: usize, seed: u64, exec: Exec) -> Result<PointCloud> {
    check_element(algebra, a)?;
    if n_dual == 0 {
        return Err(Error::InvalidArgument("n_dual must be positive".into()));
    }
    let source = FunctionalSource::new(algebra, n_dual, seed);
    let found = map_indexed(exec, xs.len(), |i| source.functionals(&xs[i], i));
    let mut functionals = Vec::with_capacity(xs.len());
    let mut points = Vec::new();
    let mut skipped = 0;
    for (x_index, f) in found.into_iter().enumerate() {
        let f = f?.unwrap_or_else(|| {
            skipped += 1;
            Vec::new()
        });
        let ax = algebra.mul_raw(a, &xs[x_index]);
        points.extend(f.iter().enumerate().map(|(phi_index, phi)| RangePoint { z: phi.apply_raw(&ax), x_index, phi_index }));
        functionals.push(f);
    }
    let meta = CloudMeta {
        algebra: algebra.name().map(str::to_owned),
        norm: algebra.norm_spec().describe(),
        a: a.clone(),
        n_sphere: xs.len(),
        n_dual,
        seed,
        exact_duality: source.is_exact(),
        skipped,
        refined: 0,
    };
    Ok(PointCloud { points, xs, functionals, meta })
}

/// Sampled `V(a)` over the deterministic sphere sample.
pub fn spatial_range(algebra: &Algebra, a: &Element, n_sphere: usize, n_dual: usize, seed: u64) -> Result<RangeEstimate> {
    spatial_range_with(algebra, a, &RangeOptions { n_sphere, n_dual, seed, ..Default::default() })
}

pub fn spatial_range_with(algebra: &Algebra, a: &Element, opts: &RangeOptions) -> Result<RangeEstimate> {
    if opts.n_sphere == 0 {
        return Err(Error::InvalidArgument("n_sphere must be positive".into()));
    }
    check_element(algebra, a)?;
    let xs = sphere_points(algebra, opts.n_sphere, opts.seed);
    let mut cloud = cloud_over(algebra, a, xs, opts.n_dual, opts.seed, opts.exec)?;
    if opts.refine > 0 && algebra.p_exponent().is_some() && !cloud.is_empty() {
        refine(algebra, a, &mut cloud, opts.refine, opts.seed, opts.exec)?;
    }
    RangeEstimate::from_cloud(cloud)
}

/// Local search for the support points of `V(a)`: for each of `n_dirs`
/// directions, a seeded hill climb over the sphere starting at the best
/// sampled unit vector, scoring `x` by the best member of `D(x)` along the
/// direction. The final `(x, phi)` of each climb is appended to the cloud.
fn refine(algebra: &Algebra, a: &Element, cloud: &mut PointCloud, n_dirs: usize, seed: u64, exec: Exec) -> Result<()> {
    let score = |x: &Element, theta: f64| -> Result<(f64, Functional, C64)> {
        let ax = algebra.mul_raw(a, x);
        let phi = duality_set_exact(algebra, x)?.best_along(&ax, theta).ok_or(Error::Empty("duality set"))?;
        let z = phi.apply_raw(&ax);
        Ok(((C64::from_polar(1.0, -theta) * z).re, phi, z))
    };
    // every sampled x scored with its best functional along each direction
    let prepared: Vec<(DualitySet, Vec<C64>)> =
        map_indexed(exec, cloud.xs.len(), |i| duality_set_exact(algebra, &cloud.xs[i]).map(|ds| (ds, algebra.mul_raw(a, &cloud.xs[i]))))
            .into_iter()
            .collect::<Result<_>>()?;
    let climbs = map_indexed(exec, n_dirs, |j| -> Result<(Element, Functional, C64)> {
        let theta = direction(j, n_dirs);
        let u = C64::from_polar(1.0, -theta);
        let along = |(ds, ax): &(DualitySet, Vec<C64>)| ds.best_along(ax, theta).map_or(f64::NEG_INFINITY, |f| (u * f.apply_raw(ax)).re);
        let start = (0..prepared.len()).max_by(|&p, &q| along(&prepared[p]).total_cmp(&along(&prepared[q]))).unwrap_or(0);
        let mut x = cloud.xs[start].clone();
        let (mut best, mut phi, mut z) = score(&x, theta)?;
        let mut rng = stream_rng(seed, streams::REFINE, j as u64);
        let mut step = 0.25;
        for k in 0..REFINE_STEPS {
            let cand = propose(&x, step, k % 3, &mut rng);
            let Some(cand) = normalize(algebra, &cand) else { continue };
            let (s, f, w) = score(&cand, theta)?;
            if s > best {
                (x, best, phi, z) = (cand, s, f, w);
            } else {
                step *= 0.9;
            }
        }
        Ok((x, phi, z))
    });
    for c in climbs {
        let (x, phi, z) = c?;
        let x_index = cloud.xs.len();
        cloud.xs.push(x);
        cloud.functionals.push(vec![phi]);
        cloud.points.push(RangePoint { z, x_index, phi_index: 0 });
        cloud.meta.refined += 1;
    }
    Ok(())
}

/// Perturbation of `x`: kind 0 moves every coordinate, 1 keeps the support,
/// 2 rotates the coordinates of maximal modulus and moves the others.
fn propose<R: rand::Rng + ?Sized>(x: &Element, step: f64, kind: usize, rng: &mut R) -> Vec<C64> {
    let g = gaussian_vector(rng, x.dim());
    let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    x.iter()
        .zip(&g)
        .map(|(&xk, &gk)| match kind {
            0 => xk + gk * step,
            1 if xk.norm() > 0.0 => xk + gk * step,
            1 => xk,
            _ if xk.norm() >= m * (1.0 - 1e-12) => xk * C64::from_polar(1.0, gk.re * step),
            _ => {
                let v = xk + gk * step;
                if v.norm() > m {
                    v * (m / v.norm())
                } else {
                    v
                }
            }
        })
        .collect()
}

/// Largest modulus over the sampled values.
pub fn numerical_radius(est: &RangeEstimate) -> Result<f64> {
    let zs = est.cloud.values();
    let (r, _) = max_modulus(&zs).ok_or(Error::Empty("range cloud"))?;
    Ok(r)
}

/// Output of [`support_range_at_identity`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityRange {
    /// Polygon of the extrapolated support values.
    pub polygon: ConvexPolygon,
    /// Polygon of the certified upper support values (an outer set).
    pub upper: ConvexPolygon,
    pub support: Vec<f64>,
    pub upper_support: Vec<f64>,
    /// Slack added to the extrapolated values to make them consistent.
    pub slack: f64,
}

/// Difference quotients `(||1 + t e^{-i theta} b|| - 1) / t` for each `t`.
pub fn support_quotients<N: Norm + ?Sized>(norm: &N, identity: &[C64], b: &[C64], theta: f64, ts: &[f64]) -> Vec<f64> {
    let rot = C64::from_polar(1.0, -theta);
    ts.iter()
        .map(|&t| {
            let v: Vec<C64> = identity.iter().zip(b).map(|(e, bk)| e + bk * rot * t).collect();
            (norm.eval(&v) - 1.0) / t
        })
        .collect()
}

/// Range of `b` at the identity of a unital normed algebra, from its
/// support function `h(theta) = lim_{t -> 0+} (||1 + t e^{-i theta} b|| - 1) / t`.
///
/// The quotient decreases as `t` decreases, so its minimum over the schedule
/// bounds `h` from above; the two smallest steps are extrapolated linearly to
/// `t = 0`.
pub fn support_range_at_identity<N: Norm + ?Sized>(norm: &N, identity: &[C64], b: &[C64], n_dirs: usize, t_schedule: &[f64]) -> Result<IdentityRange> {
    let n = norm.dim();
    for v in [identity, b] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        crate::ensure_finite(v, "element")?;
    }
    let unit = norm.eval(identity);
    if (unit - 1.0).abs() > 1e-9 {
        return Err(Error::IdentityNotNormalized(unit));
    }
    if t_schedule.len() < 2 || t_schedule.iter().any(|&t| !(t > 0.0 && t.is_finite())) || t_schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("t schedule must be strictly decreasing and positive".into()));
    }
    if n_dirs < 3 {
        return Err(Error::InvalidArgument("need at least 3 directions".into()));
    }
    let (t1, t2) = (t_schedule[t_schedule.len() - 2], t_schedule[t_schedule.len() - 1]);
    let (upper_support, support): (Vec<f64>, Vec<f64>) = (0..n_dirs)
        .map(|k| {
            let q = support_quotients(norm, identity, b, direction(k, n_dirs), t_schedule);
            let upper = q.iter().copied().fold(f64::INFINITY, f64::min);
            let (q1, q2) = (q[q.len() - 2], q[q.len() - 1]);
            let extrapolated = (t1 * q2 - t2 * q1) / (t1 - t2);
            (upper, extrapolated.min(upper))
        })
        .unzip();
    let (upper, _) = relaxed_intersection(&upper_support);
    let (mut polygon, mut slack) = relaxed_intersection(&support);
    if polygon.is_empty() {
        polygon = upper.clone();
        slack = f64::INFINITY;
    }
    Ok(IdentityRange { polygon, upper, support, upper_support, slack })
}

/// Intersection of the support half-planes, loosened by the smallest power
/// of ten (from 1e-12) that makes it nonempty. Rounding in the difference
/// quotients can leave degenerate sets, such as a single point, empty.
fn relaxed_intersection(h: &[f64]) -> (ConvexPolygon, f64) {
    let polygon = halfplane_intersection(h);
    if !polygon.is_empty() {
        return (polygon, 0.0);
    }
    let mut eps = 1e-12;
    while eps <= 1.0 {
        let relaxed: Vec<f64> = h.iter().map(|v| v + eps).collect();
        let polygon = halfplane_intersection(&relaxed);
        if !polygon.is_empty() {
            return (polygon, eps);
        }
        eps *= 10.0;
    }
    (ConvexPolygon::default(), f64::INFINITY)
}

/// Closed disk `V(a + lambda 1; 1)` in the `l1` unitization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskRange {
    pub center: C64,
    pub radius: f64,
    /// [`DISK_VERTICES`] vertices on the circle, one at the point of
    /// largest modulus.
    pub polygon: ConvexPolygon,
}

impl DiskRange {
    /// `|z - center| - radius`.
    pub fn signed_distance(&self, z: C64) -> f64 {
        (z - self.center).norm() - self.radius
    }

    /// `|center| + radius`.
    pub fn numerical_radius(&self) -> f64 {
        self.center.norm() + self.radius
    }
}

/// `V_{A_e^1}(a + lambda 1; 1)`: the disk of center `lambda` and radius
/// `||a||`, since the norm-one functionals taking 1 at the identity are
/// `(psi, 1)` with `||psi|| <= 1`.
pub fn v1_at_identity(algebra: &Algebra, a: &Element, lambda: C64) -> Result<DiskRange> {
    let radius = algebra.norm_eval(a)?;
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(Error::NonFinite("lambda"));
    }
    let phase = if lambda.norm() > 0.0 { lambda.arg() } else { 0.0 };
    let polygon = ConvexPolygon::regular(lambda, radius, DISK_VERTICES, phase);
    Ok(DiskRange { center: lambda, radius, polygon })
}

/// [`support_range_at_identity`] with the default schedule and directions.
pub fn identity_oracle<N: Norm + ?Sized>(norm: &N, identity: &[C64], b: &[C64]) -> Result<IdentityRange> {
    support_range_at_identity(norm, identity, b, DEFAULT_DIRECTIONS, &T_SCHEDULE)
}
