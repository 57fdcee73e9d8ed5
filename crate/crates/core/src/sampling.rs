//! Deterministic seeded sampling: unit spheres, disks and simplices.
//!
//! Every random draw is keyed by `(seed, stream, index)`, so results do not
//! depend on evaluation order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::algebra::{Algebra, Element, NormSpec};
use crate::C64;

/// Stream tags for [`stream_rng`].
pub mod streams {
    pub const SPHERE: u64 = 1;
    pub const DUALITY: u64 = 2;
    pub const PROBES: u64 = 3;
    pub const DUAL_BALL: u64 = 4;
    pub const INSTANCES: u64 = 5;
    pub const REFINE: u64 = 6;
}

/// Sign patterns for `p = inf` are enumerated up to this dimension.
pub const MAX_PATTERN_DIM: usize = 8;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for draw `index` of `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(seed ^ splitmix(stream)) ^ index))
}

/// Child seed for item `index` of `stream`.
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix(splitmix(seed ^ splitmix(stream.wrapping_add(0x51))) ^ index.wrapping_mul(0x2545_f491_4f6c_dd1d))
}

/// Vector of independent standard complex Gaussians.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect()
}

pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

/// Uniform point of the closed unit disk.
pub fn unit_disk<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let r = rng.random::<f64>().sqrt();
    random_phase(rng) * r
}

/// Uniform point of the probability simplex with `k` vertices.
pub fn simplex<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<bool> {
    loop {
        let mask: Vec<bool> = (0..n).map(|_| rng.random::<bool>()).collect();
        if mask.iter().any(|&b| b) {
            return mask;
        }
    }
}

/// Deterministic structured points: basis vectors, all `e_i + s e_j` with
/// `s` in `{1, -1, i, -i}`, and for `l_inf` norms in dimension at most
/// [`MAX_PATTERN_DIM`] every pattern `(1, s_2, ..., s_n)`. Not normalized.
pub fn structured_directions(algebra: &Algebra) -> Vec<Element> {
    let n = algebra.dim();
    let phases = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)];
    let mut out: Vec<Element> = (0..n).map(|k| Element::basis(n, k)).collect();
    for i in 0..n {
        for j in i + 1..n {
            for s in phases {
                let mut v = Element::basis(n, i).into_vec();
                v[j] = s;
                out.push(Element::new(v));
            }
        }
    }
    let linf = matches!(algebra.norm_spec(), NormSpec::P(p) if p.is_infinite());
    if linf && (3..=MAX_PATTERN_DIM).contains(&n) {
        let count = 4usize.pow(n as u32 - 1);
        for code in 0..count {
            let mut c = code;
            let mut v = vec![C64::new(1.0, 0.0); n];
            for slot in v.iter_mut().skip(1) {
                *slot = phases[c % 4];
                c /= 4;
            }
            out.push(Element::new(v));
        }
    }
    out
}

/// One random direction: even indices are complex Gaussian, odd indices are
/// face samples (for `l_inf`: a random set of saturated coordinates, for any
/// other norm: a random support set). Not normalized.
pub fn random_direction(algebra: &Algebra, seed: u64, index: usize) -> Element {
    let n = algebra.dim();
    let mut rng = stream_rng(seed, streams::SPHERE, index as u64);
    if index.is_multiple_of(2) {
        return Element::new(gaussian_vector(&mut rng, n));
    }
    let mask = random_subset(&mut rng, n);
    let linf = matches!(algebra.norm_spec(), NormSpec::P(p) if p.is_infinite());
    mask.into_iter()
        .map(|on| {
            let phase = random_phase(&mut rng);
            match (linf, on) {
                (true, true) => phase,
                (true, false) => phase * rng.random::<f64>(),
                (false, true) => phase * <Exp1 as Distribution<f64>>::sample(&Exp1, &mut rng),
                (false, false) => C64::new(0.0, 0.0),
            }
        })
        .collect()
}

/// Points of the unit sphere of `algebra`: the structured directions
/// followed by `n_random` seeded random directions, each normalized.
/// Directions of zero norm are dropped.
pub fn sphere_points(algebra: &Algebra, n_random: usize, seed: u64) -> Vec<Element> {
    structured_directions(algebra).into_iter().chain((0..n_random).map(|i| random_direction(algebra, seed, i))).filter_map(|v| normalize(algebra, &v)).collect()
}

/// `v / ||v||`, or `None` for a zero-norm vector.
pub fn normalize(algebra: &Algebra, v: &[C64]) -> Option<Element> {
    let n = algebra.norm_raw(v);
    (n > 0.0 && n.is_finite()).then(|| v.iter().map(|z| z / n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exponent;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = stream_rng(7, 1, 3).random();
        let b: f64 = stream_rng(7, 1, 3).random();
        let c: f64 = stream_rng(7, 1, 4).random();
        let d: f64 = stream_rng(7, 2, 3).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn sphere_points_are_unit() {
        for p in [1.0, 2.0, 3.5, f64::INFINITY] {
            let alg = Algebra::pointwise(3, Exponent::new(p).unwrap());
            let pts = sphere_points(&alg, 200, 11);
            assert_eq!(pts.len(), 3 + 12 + 200 + if p.is_infinite() { 16 } else { 0 });
            for x in &pts {
                assert!((alg.norm_raw(x) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn face_samples_for_linf_saturate_a_coordinate_set() {
        let alg = Algebra::pointwise(4, Exponent::INFINITY);
        let x = random_direction(&alg, 3, 1);
        let saturated = x.iter().filter(|z| (z.norm() - 1.0).abs() < 1e-12).count();
        assert!(saturated >= 1);
    }

    #[test]
    fn simplex_and_disk() {
        let mut rng = stream_rng(0, 0, 0);
        for _ in 0..100 {
            let t = simplex(&mut rng, 3);
            assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(t.iter().all(|&v| v >= 0.0));
            assert!(unit_disk(&mut rng).norm() <= 1.0);
        }
    }
}
