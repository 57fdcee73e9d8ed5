//! Convex geometry in the complex plane.
//!
//! A [`ConvexPolygon`] stores the vertices of a compact convex set in
//! counter-clockwise order starting from the lexicographically least vertex
//! (by real part, then imaginary part). Degenerate sets are a single vertex
//! (a point) or two vertices (a segment). Distances between convex sets are
//! measured through support functions `h_K(t) = max{Re(e^{-it} z) : z in K}`.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Vertices closer than this are merged.
pub const COLLAPSE_TOL: f64 = 1e-12;
/// Default number of directions for support-function comparisons.
pub const DEFAULT_DIRECTIONS: usize = 720;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<C64>,
}

fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn lex(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Direction `k` of `n` equally spaced directions, as the angle `2 pi k / n`.
pub fn direction(k: usize, n: usize) -> f64 {
    2.0 * PI * k as f64 / n as f64
}

/// Monotone-chain convex hull; collinear and repeated points are dropped.
pub fn convex_hull(points: &[C64]) -> ConvexPolygon {
    let mut pts: Vec<C64> = points.iter().copied().filter(|z| z.re.is_finite() && z.im.is_finite()).collect();
    if pts.is_empty() {
        return ConvexPolygon::default();
    }
    pts.sort_by(lex);
    let scale = pts.iter().map(|z| (z - pts[0]).norm()).fold(0.0, f64::max);
    if scale <= COLLAPSE_TOL {
        return ConvexPolygon { vertices: vec![pts[0]] };
    }
    pts.dedup_by(|a, b| (*a - *b).norm() <= COLLAPSE_TOL);
    // turns smaller than this (relative to the extent) count as straight
    let eps = 1e-14 * scale * scale;

    let mut hull: Vec<C64> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() == 2 && (hull[0] - hull[1]).norm() <= COLLAPSE_TOL {
        hull.truncate(1);
    }
    ConvexPolygon { vertices: hull }
}

impl ConvexPolygon {
    /// Hull of the given vertices (any order).
    pub fn from_points(points: &[C64]) -> Self {
        convex_hull(points)
    }

    pub fn point(z: C64) -> Self {
        Self { vertices: vec![z] }
    }

    /// `n` vertices on the circle `|z - center| = radius`, the first at
    /// angle `phase`.
    pub fn regular(center: C64, radius: f64, n: usize, phase: f64) -> Self {
        if radius == 0.0 {
            return Self::point(center);
        }
        let pts: Vec<C64> = (0..n).map(|k| center + C64::from_polar(radius, phase + direction(k, n))).collect();
        convex_hull(&pts)
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `h(theta) = max_v Re(e^{-i theta} v)`.
    pub fn support(&self, theta: f64) -> f64 {
        let rot = C64::from_polar(1.0, -theta);
        self.vertices.iter().map(|v| (v * rot).re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn support_profile(&self, n_dirs: usize) -> Vec<f64> {
        (0..n_dirs).map(|k| self.support(direction(k, n_dirs))).collect()
    }

    /// Largest vertex modulus.
    pub fn max_modulus(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0_f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Euclidean distance from `z` to the set, negative inside (minus the
    /// distance to the boundary). Points and segments have no interior.
    pub fn signed_distance(&self, z: C64) -> Result<f64> {
        let v = &self.vertices;
        match v.len() {
            0 => Err(Error::Empty("polygon")),
            1 => Ok((z - v[0]).norm()),
            2 => Ok(segment_distance(z, v[0], v[1])),
            n => {
                let mut inside = true;
                let mut dist = f64::INFINITY;
                for i in 0..n {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    if cross(a, b, z) < 0.0 {
                        inside = false;
                    }
                    dist = dist.min(segment_distance(z, a, b));
                }
                Ok(if inside { -dist } else { dist })
            }
        }
    }

    /// `{alpha z + beta : z in P}`, re-canonicalized.
    pub fn scale_translate(&self, alpha: C64, beta: C64) -> ConvexPolygon {
        let pts: Vec<C64> = self.vertices.iter().map(|v| v * alpha + beta).collect();
        convex_hull(&pts)
    }

    /// Largest signed distance of `points` to `self`, with the worst point.
    pub fn max_excess(&self, points: impl IntoIterator<Item = C64>) -> Result<(f64, Option<C64>)> {
        let mut worst = (f64::NEG_INFINITY, None);
        for z in points {
            let d = self.signed_distance(z)?;
            if d > worst.0 {
                worst = (d, Some(z));
            }
        }
        Ok(worst)
    }
}

fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Hausdorff distance of convex sets from `n_dirs` support directions:
/// `max_k |h_P(theta_k) - h_Q(theta_k)|`.
pub fn hausdorff(p: &ConvexPolygon, q: &ConvexPolygon, n_dirs: usize) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::Empty("polygon"));
    }
    if n_dirs == 0 {
        return Err(Error::InvalidArgument("n_dirs must be positive".into()));
    }
    Ok((0..n_dirs)
        .map(|k| {
            let t = direction(k, n_dirs);
            (p.support(t) - q.support(t)).abs()
        })
        .fold(0.0, f64::max))
}

/// One-sided support excess `max_k (h_P - h_Q)^+`: zero when `P` is inside
/// `Q` (up to the direction sampling).
pub fn support_excess(p: &ConvexPolygon, q: &ConvexPolygon, n_dirs: usize) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::Empty("polygon"));
    }
    Ok((0..n_dirs)
        .map(|k| {
            let t = direction(k, n_dirs);
            (p.support(t) - q.support(t)).max(0.0)
        })
        .fold(0.0, f64::max))
}

/// `max_{p in from} min_{q in to} |p - q|` for finite point sets.
pub fn one_sided_point_distance(from: &[C64], to: &[C64]) -> Result<f64> {
    if to.is_empty() {
        return Err(Error::Empty("target point set"));
    }
    Ok(from.iter().map(|p| to.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max))
}

/// Uniform grid over a finite point set for nearest-point queries.
pub struct PointIndex {
    cell: f64,
    cells: HashMap<(i64, i64), Vec<C64>>,
    lo: (i64, i64),
    hi: (i64, i64),
}

impl PointIndex {
    /// Buckets `points` into square cells of side `cell`.
    pub fn new(points: &[C64], cell: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("point set"));
        }
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(Error::InvalidArgument("cell size must be positive".into()));
        }
        let mut cells: HashMap<(i64, i64), Vec<C64>> = HashMap::new();
        let (mut lo, mut hi) = ((i64::MAX, i64::MAX), (i64::MIN, i64::MIN));
        for &z in points {
            let key = Self::key_of(z, cell);
            lo = (lo.0.min(key.0), lo.1.min(key.1));
            hi = (hi.0.max(key.0), hi.1.max(key.1));
            cells.entry(key).or_default().push(z);
        }
        Ok(Self { cell, cells, lo, hi })
    }

    fn key_of(z: C64, cell: f64) -> (i64, i64) {
        ((z.re / cell).floor() as i64, (z.im / cell).floor() as i64)
    }

    /// Distance from `z` to the nearest indexed point.
    pub fn nearest(&self, z: C64) -> f64 {
        let home = Self::key_of(z, self.cell);
        let reach = [home.0 - self.lo.0, self.hi.0 - home.0, home.1 - self.lo.1, self.hi.1 - home.1].into_iter().map(i64::abs).max().unwrap_or(0);
        let scan = |pts: &Vec<C64>, best: &mut f64| {
            for p in pts {
                *best = best.min((p - z).norm());
            }
        };
        let mut best = f64::INFINITY;
        for r in 0..=reach {
            // points outside ring r - 1 are at least (r - 1) cells away
            if best <= (r - 1).max(0) as f64 * self.cell {
                break;
            }
            if 8 * r as usize > self.cells.len() {
                // the ring is larger than the occupied set: scan what is left
                for (key, pts) in &self.cells {
                    if (key.0 - home.0).abs().max((key.1 - home.1).abs()) >= r {
                        scan(pts, &mut best);
                    }
                }
                break;
            }
            let ring =
                (-r..=r).flat_map(|d| [(d, -r), (d, r)]).chain((-r + 1..r).flat_map(|d| [(-r, d), (r, d)])).filter(|&(dx, dy)| r > 0 || (dx, dy) == (0, 0));
            for (dx, dy) in ring {
                if let Some(pts) = self.cells.get(&(home.0 + dx, home.1 + dy)) {
                    scan(pts, &mut best);
                }
                if r == 0 {
                    break;
                }
            }
        }
        best
    }

    /// `max_{z in from} nearest(z)`, with the worst point. Repeated query
    /// points are evaluated once.
    pub fn max_distance_from(&self, from: &[C64]) -> (f64, Option<C64>) {
        let mut uniq: Vec<C64> = from.to_vec();
        uniq.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        uniq.dedup();
        uniq.iter().map(|&z| (self.nearest(z), z)).fold((0.0, None), |acc, (d, z)| if d > acc.0 { (d, Some(z)) } else { acc })
    }
}

/// `{z : Re(e^{-i theta_k} z) <= h_k}` for `theta_k = 2 pi k / n`.
///
/// Returns an empty polygon when the constraints are inconsistent.
pub fn halfplane_intersection(h: &[f64]) -> ConvexPolygon {
    let n = h.len();
    if n < 3 {
        return ConvexPolygon::default();
    }
    let bound = 2.0 * h.iter().map(|v| v.abs()).fold(0.0, f64::max) + 1.0;
    let mut poly = vec![C64::new(-bound, -bound), C64::new(bound, -bound), C64::new(bound, bound), C64::new(-bound, bound)];
    for (k, &hk) in h.iter().enumerate() {
        let u = C64::from_polar(1.0, direction(k, n));
        let level = |z: C64| (z * u.conj()).re - hk;
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            let (la, lb) = (level(a), level(b));
            if la <= 0.0 {
                next.push(a);
            }
            if (la < 0.0 && lb > 0.0) || (la > 0.0 && lb < 0.0) {
                next.push(a + (b - a) * (la / (la - lb)));
            }
        }
        poly = next;
        if poly.is_empty() {
            return ConvexPolygon::default();
        }
    }
    convex_hull(&poly)
}
