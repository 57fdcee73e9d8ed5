//! Duality sets `D(x) = {phi : ||phi|| = 1 = phi(x)}` of unit vectors.
//!
//! Functionals act through the bilinear pairing `<z, y> = sum z_k y_k`
//! (no conjugation). For coordinate `p`-norms the dual is `l_q` and the
//! duality set has a closed form; for every other norm it is approximated
//! by finite-difference subgradients, see [`NumericDuality`].

use serde::Serialize;

use crate::algebra::{Algebra, Element, Exponent, Norm};
use crate::sampling::{gaussian_vector, random_phase, simplex, stream_rng, streams, unit_disk};
use crate::{ensure_finite, Error, Result, C64};

/// `|norm(x) - 1|` allowed for points treated as unit vectors.
pub const SPHERE_TOL: f64 = 1e-9;
/// Coordinates within this of the maximal modulus count as maximal.
pub const ARGMAX_TOL: f64 = 1e-9;
/// Default finite-difference scale for numeric norming functionals.
pub const FD_DELTA: f64 = 1e-5;
/// Acceptance tolerance for numeric norming functionals.
pub const FEAS_TOL: f64 = 1e-6;
/// Sphere samples used to estimate dual norms.
pub const DUAL_BALL_SAMPLES: usize = 10_000;
/// Local refinements of the best dual-norm sample.
pub const DUAL_ASCENT_STEPS: usize = 16;
/// Seed of the dual-ball sample used by [`norming_functional_numeric`].
pub const DUAL_BALL_SEED: u64 = 0xba11;

const ZERO: C64 = C64::new(0.0, 0.0);

pub fn dual_exponent(p: f64) -> Result<Exponent> {
    Ok(Exponent::new(p)?.dual())
}

/// A linear functional `z -> sum z_k y_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Functional {
    coeffs: Vec<C64>,
}

impl Functional {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn apply(&self, z: &[C64]) -> Result<C64> {
        if z.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch { expected: self.coeffs.len(), found: z.len() });
        }
        ensure_finite(z, "element")?;
        Ok(self.apply_raw(z))
    }

    pub(crate) fn apply_raw(&self, z: &[C64]) -> C64 {
        z.iter().zip(&self.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, alpha: C64) -> Functional {
        Self { coeffs: self.coeffs.iter().map(|y| y * alpha).collect() }
    }

    /// `sum_i w_i phi_i` for nonnegative weights.
    pub fn combine(parts: &[(f64, &Functional)]) -> Functional {
        let dim = parts.first().map_or(0, |(_, f)| f.dim());
        let mut coeffs = vec![ZERO; dim];
        for (w, f) in parts {
            for (c, y) in coeffs.iter_mut().zip(&f.coeffs) {
                *c += y * *w;
            }
        }
        Self { coeffs }
    }
}

pub fn apply_functional(phi: &Functional, z: &Element) -> Result<C64> {
    phi.apply(z)
}

/// How far a functional is from `D(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    /// `|phi(x) - 1|`.
    pub pairing: f64,
    /// `max(0, ||phi||_* - 1)`; for numeric clouds `||phi||_*` is a sampled
    /// lower bound.
    pub norm_excess: f64,
}

impl Feasibility {
    pub fn worst(&self) -> f64 {
        self.pairing.max(self.norm_excess)
    }
}

/// Bookkeeping attached to a numerically computed duality set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericMeta {
    pub probes: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub delta: f64,
    pub feas_tol: f64,
    /// Dual norms are estimated from below, so acceptance is permissive.
    pub dual_norm_is_lower_bound: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericCloud {
    pub members: Vec<Functional>,
    pub residuals: Vec<Feasibility>,
    pub meta: NumericMeta,
}

/// Parametrized duality set of a unit vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum DualitySet {
    /// Smooth point: the unique norming functional.
    SmoothPoint(Functional),
    /// `l1`: `y_k = conj(x_k)/|x_k|` on the support, any `|y_k| <= 1` off it.
    L1Family {
        dim: usize,
        fixed: Vec<(usize, C64)>,
        free: Vec<usize>,
    },
    /// `l_inf`: `y_k = t_k phase_k` on the maximal coordinates, `t` in the
    /// probability simplex, zero elsewhere.
    LInfFamily {
        dim: usize,
        argmax: Vec<usize>,
        phases: Vec<C64>,
    },
    NumericCloud(NumericCloud),
}

impl DualitySet {
    pub fn dim(&self) -> usize {
        match self {
            DualitySet::SmoothPoint(y) => y.dim(),
            DualitySet::L1Family { dim, .. } | DualitySet::LInfFamily { dim, .. } => *dim,
            DualitySet::NumericCloud(c) => c.members.first().map_or(0, Functional::dim),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, DualitySet::NumericCloud(_))
    }

    pub fn feasibility_tol(&self) -> f64 {
        match self {
            DualitySet::NumericCloud(c) => c.meta.feas_tol,
            _ => 0.0,
        }
    }

    /// `{conj(alpha) phi}`: the duality set of `alpha x` for `|alpha| = 1`.
    pub fn rotate(&self, alpha: C64) -> DualitySet {
        let a = alpha.conj();
        match self {
            DualitySet::SmoothPoint(y) => DualitySet::SmoothPoint(y.scale(a)),
            DualitySet::L1Family { dim, fixed, free } => {
                DualitySet::L1Family { dim: *dim, fixed: fixed.iter().map(|&(k, v)| (k, v * a)).collect(), free: free.clone() }
            }
            DualitySet::LInfFamily { dim, argmax, phases } => {
                DualitySet::LInfFamily { dim: *dim, argmax: argmax.clone(), phases: phases.iter().map(|v| v * a).collect() }
            }
            DualitySet::NumericCloud(c) => DualitySet::NumericCloud(NumericCloud {
                members: c.members.iter().map(|y| y.scale(a)).collect(),
                residuals: c.residuals.clone(),
                meta: c.meta.clone(),
            }),
        }
    }
}

impl DualitySet {
    /// The member maximizing `Re(e^{-i theta} phi(w))`. For numeric clouds
    /// the best accepted member; `None` if the cloud is empty.
    pub fn best_along(&self, w: &[C64], theta: f64) -> Option<Functional> {
        let u = C64::from_polar(1.0, -theta);
        match self {
            DualitySet::SmoothPoint(y) => Some(y.clone()),
            DualitySet::L1Family { dim, fixed, free } => {
                let mut y = vec![ZERO; *dim];
                for &(k, v) in fixed {
                    y[k] = v;
                }
                for &k in free {
                    if w[k].norm() > 0.0 {
                        y[k] = w[k].conj() / (w[k].norm() * u);
                    }
                }
                Some(Functional::new(y))
            }
            DualitySet::LInfFamily { dim, argmax, phases } => {
                let (k, ph) = argmax.iter().zip(phases).max_by(|(i, p), (j, q)| (u * *p * w[**i]).re.total_cmp(&(u * *q * w[**j]).re))?;
                let mut y = vec![ZERO; *dim];
                y[*k] = *ph;
                Some(Functional::new(y))
            }
            DualitySet::NumericCloud(c) => c.members.iter().max_by(|f, g| (u * f.apply_raw(w)).re.total_cmp(&(u * g.apply_raw(w)).re)).cloned(),
        }
    }
}

/// Closed-form duality set for an algebra normed by `||.||_p`.
pub fn duality_set_exact(algebra: &Algebra, x: &Element) -> Result<DualitySet> {
    let p = algebra.p_exponent().ok_or(Error::UnsupportedNorm("closed-form duality set"))?;
    let norm = algebra.norm_eval(x)?;
    if (norm - 1.0).abs() > SPHERE_TOL {
        return Err(Error::OffSphere { norm });
    }
    let dim = x.dim();
    let unit = |z: C64| z.conj() / z.norm();
    if p.is_one() {
        let (support, free): (Vec<usize>, Vec<usize>) = (0..dim).partition(|&k| x[k].norm() > 0.0);
        let fixed = support.into_iter().map(|k| (k, unit(x[k]))).collect();
        return Ok(DualitySet::L1Family { dim, fixed, free });
    }
    if p.is_infinite() {
        let argmax: Vec<usize> = (0..dim).filter(|&k| x[k].norm() >= norm - ARGMAX_TOL).collect();
        let phases = argmax.iter().map(|&k| unit(x[k])).collect();
        return Ok(DualitySet::LInfFamily { dim, argmax, phases });
    }
    // computed from x / ||x|| so that ||y||_q = 1 up to rounding
    let y = p.norming_vector(x);
    Ok(DualitySet::SmoothPoint(Functional::new(y)))
}

/// `k` members of the set, a pure function of `(ds, k, seed)`.
pub fn sample_duality_set(ds: &DualitySet, k: usize, seed: u64) -> Result<Vec<Functional>> {
    if k == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    Ok(match ds {
        DualitySet::SmoothPoint(y) => vec![y.clone(); k],
        DualitySet::L1Family { dim, fixed, free } => (0..k)
            .map(|m| {
                let mut rng = stream_rng(seed, streams::DUALITY, m as u64);
                let mut y = vec![ZERO; *dim];
                for &(idx, v) in fixed {
                    y[idx] = v;
                }
                for &idx in free {
                    y[idx] = unit_disk(&mut rng);
                }
                Functional::new(y)
            })
            .collect(),
        DualitySet::LInfFamily { dim, argmax, phases } => (0..k)
            .map(|m| {
                let mut rng = stream_rng(seed, streams::DUALITY, m as u64);
                let t = simplex(&mut rng, argmax.len());
                let mut y = vec![ZERO; *dim];
                for ((&idx, &ph), tk) in argmax.iter().zip(phases).zip(t) {
                    y[idx] = ph * tk;
                }
                Functional::new(y)
            })
            .collect(),
        DualitySet::NumericCloud(c) => {
            let n = c.members.len();
            if n == 0 {
                return Err(Error::Empty("numeric duality cloud"));
            }
            let offset = (seed % n as u64) as usize;
            (0..k).map(|m| c.members[(offset + m * n.max(k) / k) % n].clone()).collect()
        }
    })
}

/// Feasibility of `y` for `D(x)` under `||.||_p` (dual norm exact).
pub fn feasibility_p(p: Exponent, x: &[C64], y: &Functional) -> Feasibility {
    Feasibility { pairing: (y.apply_raw(x) - C64::new(1.0, 0.0)).norm(), norm_excess: (p.dual().norm(y.coeffs()) - 1.0).max(0.0) }
}

/// Numeric norming functionals of a general norm.
///
/// Holds a fixed sample of the unit sphere, used to estimate dual norms
/// `||y||_* = sup{|<z, y>| : ||z|| = 1}` from below; build once per norm and
/// reuse across many unit vectors.
pub struct NumericDuality<'a, N: Norm + ?Sized> {
    norm: &'a N,
    ball: Vec<Vec<C64>>,
    seed: u64,
}

impl<'a, N: Norm + ?Sized> NumericDuality<'a, N> {
    pub fn new(norm: &'a N, seed: u64) -> Self {
        Self::with_samples(norm, DUAL_BALL_SAMPLES, seed)
    }

    pub fn with_samples(norm: &'a N, samples: usize, seed: u64) -> Self {
        let n = norm.dim();
        let phases = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)];
        let mut raw: Vec<Vec<C64>> = Vec::new();
        for i in 0..n {
            let mut e = vec![ZERO; n];
            e[i] = C64::new(1.0, 0.0);
            raw.push(e.clone());
            for j in i + 1..n {
                for s in phases {
                    let mut v = e.clone();
                    v[j] = s;
                    raw.push(v);
                }
            }
        }
        for m in 0..samples {
            let mut rng = stream_rng(seed, streams::DUAL_BALL, m as u64);
            let v = match m % 3 {
                0 => gaussian_vector(&mut rng, n),
                1 => gaussian_vector(&mut rng, n).into_iter().map(|z| if rand::Rng::random::<bool>(&mut rng) { z } else { ZERO }).collect(),
                _ => (0..n).map(|_| random_phase(&mut rng)).collect(),
            };
            raw.push(v);
        }
        let ball = raw
            .into_iter()
            .filter_map(|v| {
                let s = norm.eval(&v);
                (s > 0.0 && s.is_finite()).then(|| v.iter().map(|z| z / s).collect())
            })
            .collect();
        Self { norm, ball, seed }
    }

    /// Sampled lower bound of the dual norm of `y`.
    pub fn dual_norm_estimate(&self, y: &Functional) -> f64 {
        let pair = |z: &[C64]| y.apply_raw(z).norm();
        let Some((mut best_val, best)) = self.ball.iter().map(|z| (pair(z), z)).max_by(|a, b| a.0.total_cmp(&b.0)) else {
            return 0.0;
        };
        let mut z = best.clone();
        let mut rng = stream_rng(self.seed, streams::DUAL_BALL, u64::MAX);
        let mut step = 0.3;
        for _ in 0..DUAL_ASCENT_STEPS {
            let g = gaussian_vector(&mut rng, z.len());
            let trial: Vec<C64> = z.iter().zip(&g).map(|(a, b)| a + b * step).collect();
            let s = self.norm.eval(&trial);
            if s > 0.0 {
                let trial: Vec<C64> = trial.iter().map(|v| v / s).collect();
                let val = pair(&trial);
                if val > best_val {
                    best_val = val;
                    z = trial;
                    continue;
                }
            }
            step *= 0.5;
        }
        best_val
    }

    /// Norming functionals of the unit vector `x` from `probes` perturbed
    /// gradients, see [`norming_functional_numeric`].
    pub fn norming_functionals(&self, x: &[C64], probes: usize, delta: f64, seed: u64) -> Result<DualitySet> {
        let n = self.norm.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        ensure_finite(x, "element")?;
        let norm = self.norm.eval(x);
        if (norm - 1.0).abs() > SPHERE_TOL {
            return Err(Error::OffSphere { norm });
        }
        let mut members = Vec::new();
        let mut residuals = Vec::new();
        let mut rejected_pairing = 0;
        let mut rejected_norm = 0;
        for j in 0..probes {
            let mut rng = stream_rng(seed, streams::PROBES, j as u64);
            let w = gaussian_vector(&mut rng, n);
            let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let w: Vec<C64> = w.iter().map(|z| z / wn).collect();
            // the gradient at x + t w, extrapolated to t -> 0 from t = delta, delta/4
            let g_far = self.gradient_at(x, &w, delta, delta * 1e-3);
            let g_near = self.gradient_at(x, &w, delta / 4.0, delta * 1e-3);
            let y: Vec<C64> = g_far.iter().zip(&g_near).map(|(far, near)| (near * 4.0 - far) / 3.0).collect();
            let y = Functional::new(y);
            let raw_pairing = y.apply_raw(x);
            if (raw_pairing - C64::new(1.0, 0.0)).norm() > 1e-3 || raw_pairing.norm() == 0.0 {
                rejected_pairing += 1;
                continue;
            }
            let y = y.scale(C64::new(1.0, 0.0) / raw_pairing);
            let dual = self.dual_norm_estimate(&y);
            if dual > 1.0 + FEAS_TOL {
                rejected_norm += 1;
                continue;
            }
            residuals.push(Feasibility { pairing: (y.apply_raw(x) - C64::new(1.0, 0.0)).norm(), norm_excess: (dual - 1.0).max(0.0) });
            members.push(y);
        }
        let diagnostics = vec![
            format!("rejected {rejected_pairing} probes with |phi(x) - 1| > 1e-3"),
            format!("rejected {rejected_norm} probes with estimated dual norm > 1 + {FEAS_TOL:e}"),
        ];
        if members.is_empty() {
            return Err(Error::NoFeasibleFunctional(diagnostics.join("; ")));
        }
        let accepted = members.len();
        Ok(DualitySet::NumericCloud(NumericCloud {
            members,
            residuals,
            meta: NumericMeta { probes, accepted, rejected: probes - accepted, delta, feas_tol: FEAS_TOL, dual_norm_is_lower_bound: true, diagnostics },
        }))
    }

    /// Complexified central-difference gradient of the norm at `x + t w`.
    fn gradient_at(&self, x: &[C64], w: &[C64], t: f64, h: f64) -> Vec<C64> {
        let base: Vec<C64> = x.iter().zip(w).map(|(a, b)| a + b * t).collect();
        let mut probe = base.clone();
        let mut partial = |k: usize, dir: C64| -> f64 {
            probe[k] = base[k] + dir * h;
            let up = self.norm.eval(&probe);
            probe[k] = base[k] - dir * h;
            let down = self.norm.eval(&probe);
            probe[k] = base[k];
            (up - down) / (2.0 * h)
        };
        (0..x.len())
            .map(|k| {
                let d_re = partial(k, C64::new(1.0, 0.0));
                let d_im = partial(k, C64::new(0.0, 1.0));
                // phi(z) = l(z) - i l(iz) for the real-linear l = <grad, .>
                C64::new(d_re, -d_im)
            })
            .collect()
    }
}

/// Norming functionals of `x` for an arbitrary norm.
///
/// For each of `probes` random directions `w` the real gradient of the norm
/// is taken by central differences at `x + delta w` and `x + delta/4 w`,
/// extrapolated to `x`, complexified, rescaled so that `phi(x) = 1`, and kept
/// when its sampled dual norm is at most `1 + FEAS_TOL`.
pub fn norming_functional_numeric<N: Norm + ?Sized>(norm: &N, x: &Element, probes: usize, delta: f64) -> Result<DualitySet> {
    NumericDuality::new(norm, DUAL_BALL_SEED).norming_functionals(x, probes, delta, DUAL_BALL_SEED)
}
