mod common;

use common::*;
use num_complex::Complex64 as C64;
use numrange_core::duality::{apply_functional, duality_set_exact, feasibility_p, sample_duality_set, DualitySet, NumericDuality, FD_DELTA};
use numrange_core::sampling::sphere_points;
use numrange_core::{Algebra, Element, Exponent};
use proptest::prelude::*;

/// Unit vectors including structured ones (sparse, saturated) where the
/// `l1` and `l_inf` duality sets are not singletons.
fn unit_vectors(alg: &Algebra, seed: u64) -> Vec<Element> {
    sphere_points(alg, 6, seed)
}

/// Euclidean projection of `v` onto the probability simplex.
fn simplex_projection(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, uk) in u.iter().enumerate() {
        cum += uk;
        let t = (cum - 1.0) / (k + 1) as f64;
        if uk - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Euclidean distance from `y` to the exact set `ds`.
fn distance_to(ds: &DualitySet, y: &[C64]) -> f64 {
    match ds {
        DualitySet::SmoothPoint(f) => f.coeffs().iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt(),
        DualitySet::L1Family { fixed, free, .. } => {
            let fixed_part: f64 = fixed.iter().map(|&(k, v)| (y[k] - v).norm_sqr()).sum();
            let free_part: f64 = free.iter().map(|&k| (y[k].norm() - 1.0).max(0.0).powi(2)).sum();
            (fixed_part + free_part).sqrt()
        }
        DualitySet::LInfFamily { argmax, phases, .. } => {
            let w: Vec<C64> = argmax.iter().zip(phases).map(|(&k, ph)| y[k] * ph.conj()).collect();
            let t = simplex_projection(&w.iter().map(|z| z.re).collect::<Vec<_>>());
            let on: f64 = w.iter().zip(&t).map(|(z, tk)| (z.re - tk).powi(2) + z.im.powi(2)).sum();
            let off: f64 = (0..y.len()).filter(|k| !argmax.contains(k)).map(|k| y[k].norm_sqr()).sum();
            (on + off).sqrt()
        }
        DualitySet::NumericCloud(_) => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn holder_inequality(dim in 1usize..=4, p in exponents(), seed in any::<u64>()) {
        let alg = Algebra::pointwise(dim, p);
        for x in unit_vectors(&alg, seed) {
            let ds = duality_set_exact(&alg, &x).unwrap();
            for phi in sample_duality_set(&ds, 8, seed).unwrap() {
                let q = p.dual().norm(phi.coeffs());
                for k in 0..5 {
                    let z = element(dim, seed.wrapping_add(k));
                    let val = apply_functional(&phi, &z).unwrap();
                    prop_assert!(val.norm() <= q * p.norm(&z) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn exact_members_norm_x(dim in 1usize..=4, p in exponents(), seed in any::<u64>()) {
        let alg = Algebra::pointwise(dim, p);
        for x in unit_vectors(&alg, seed) {
            let ds = duality_set_exact(&alg, &x).unwrap();
            for phi in sample_duality_set(&ds, 16, seed).unwrap() {
                let q = p.dual().norm(phi.coeffs());
                let pairing = apply_functional(&phi, &x).unwrap();
                prop_assert!((q - 1.0).abs() <= 1e-12, "||y||_q = {q}");
                prop_assert!((pairing - c(1.0, 0.0)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn phase_equivariance(dim in 1usize..=4, p in exponents(), seed in any::<u64>(), theta in -3.2f64..3.2) {
        let alg = Algebra::pointwise(dim, p);
        let alpha = unit_scalar(theta);
        for x in unit_vectors(&alg, seed) {
            let ax = x.scale(alpha);
            let ds = duality_set_exact(&alg, &x).unwrap();
            let ds2 = duality_set_exact(&alg, &ax).unwrap();
            for phi in sample_duality_set(&ds, 8, seed).unwrap() {
                let psi = phi.scale(alpha.conj());
                prop_assert!(feasibility_p(p, &ax, &psi).worst() <= 1e-12);
                prop_assert!(distance_to(&ds2, psi.coeffs()) <= 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn numeric_functionals_reproduce_the_exact_set(dim in 2usize..=3, which in 0usize..3, seed in any::<u64>()) {
        let p = [Exponent::TWO, Exponent::ONE, Exponent::INFINITY][which];
        let alg = Algebra::pointwise(dim, p);
        let nd = NumericDuality::new(&alg, seed);
        let (probes, tol) = if which == 0 { (16, 1e-4) } else { (500, 0.1) };
        for x in unit_vectors(&alg, seed).into_iter().take(4) {
            let exact = duality_set_exact(&alg, &x).unwrap();
            let DualitySet::NumericCloud(cloud) = nd.norming_functionals(&x, probes, FD_DELTA, seed).unwrap() else {
                panic!("expected a numeric cloud");
            };
            for y in &cloud.members {
                let d = distance_to(&exact, y.coeffs());
                prop_assert!(d <= tol, "p = {p}, x = {x:?}, distance {d}");
            }
        }
    }
}
