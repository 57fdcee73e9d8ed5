mod common;

use common::*;
use numrange_core::duality::feasibility_p;
use numrange_core::range::{spatial_range_with, support_quotients, support_range_at_identity, v1_at_identity, v_at, RangeOptions, T_SCHEDULE};
use numrange_core::unitize::{unitize, Flavor, UnitizedElement};
use numrange_core::verify::{check_thm24, run_case, ToleranceProfile};
use numrange_core::Exec;
use proptest::prelude::*;

fn opts(seed: u64, refine: usize) -> RangeOptions {
    RangeOptions { n_sphere: 150, n_dual: 8, seed, exec: Exec::Sequential, refine }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// With identical seeds every recorded `(x, phi)` is reused, so the
    /// sampled clouds scale pointwise. Local refinement adds points that
    /// depend on `a`, so only the shared prefix is compared when it is on.
    #[test]
    fn homogeneity_at_sample_level(alg in gaussian_algebras(), seed in any::<u64>(), refine in prop_oneof![Just(0usize), Just(8)]) {
        let a = element(alg.dim(), seed);
        let alpha = scalar(seed);
        let p = spatial_range_with(&alg, &a, &opts(seed, refine)).unwrap().cloud;
        let q = spatial_range_with(&alg, &a.scale(alpha), &opts(seed, refine)).unwrap().cloud;
        let shared = |c: &numrange_core::range::PointCloud| {
            let cut = c.xs.len() - c.meta.refined;
            c.points.iter().filter(|pt| pt.x_index < cut).count()
        };
        prop_assert_eq!(shared(&p), shared(&q));
        if refine == 0 {
            prop_assert_eq!(p.len(), q.len());
        }
        for (u, v) in p.points.iter().zip(&q.points).take(shared(&p)) {
            prop_assert_eq!((u.x_index, u.phi_index), (v.x_index, v.phi_index));
            prop_assert!((v.z - alpha * u.z).norm() <= 1e-12 * (1.0 + v.z.norm()));
        }
        // reevaluation pairs every point, refined ones included
        let r = p.reevaluate(&alg, &a.scale(alpha)).unwrap();
        for (u, v) in p.points.iter().zip(&r.points) {
            prop_assert!((v.z - alpha * u.z).norm() <= 1e-12 * (1.0 + v.z.norm()));
        }
    }

    #[test]
    fn additivity_per_pair(alg in gaussian_algebras(), seed in any::<u64>()) {
        let a = element(alg.dim(), seed);
        let b = element(alg.dim(), seed ^ 9);
        let ca = spatial_range_with(&alg, &a, &opts(seed, 8)).unwrap().cloud;
        let cb = ca.reevaluate(&alg, &b).unwrap();
        let cab = ca.reevaluate(&alg, &a.add(&b)).unwrap();
        for ((u, v), w) in ca.points.iter().zip(&cb.points).zip(&cab.points) {
            prop_assert!((w.z - u.z - v.z).norm() <= 1e-12 * (1.0 + w.z.norm()));
        }
    }

    #[test]
    fn phase_invariance_of_v_at(alg in gaussian_algebras(), seed in any::<u64>(), theta in -3.2f64..3.2) {
        let p = alg.p_exponent().unwrap();
        let a = element(alg.dim(), seed);
        let x = unit(&alg, seed ^ 4);
        let alpha = unit_scalar(theta);
        let ax = x.scale(alpha);
        let cloud = v_at(&alg, &a, &x, 8, seed).unwrap();
        let a_ax = alg.multiply(&a, &ax).unwrap();
        for pt in &cloud.points {
            let psi = cloud.functional(pt).scale(alpha.conj());
            prop_assert!(feasibility_p(p, &ax, &psi).worst() <= 1e-12);
            prop_assert!((psi.apply(&a_ax).unwrap() - pt.z).norm() <= 1e-12 * (1.0 + pt.z.norm()));
        }
        // and the range at alpha x has the same radius bound
        let other = v_at(&alg, &a, &ax, 8, seed).unwrap();
        let op = alg.operator_norm(&a, c(0.0, 0.0)).unwrap();
        prop_assert!(other.values().iter().all(|z| z.norm() <= op + 1e-9));
    }

    #[test]
    fn range_is_bounded_by_the_operator_norm(alg in gaussian_algebras(), seed in any::<u64>()) {
        let a = element(alg.dim(), seed);
        let est = spatial_range_with(&alg, &a, &opts(seed, 8)).unwrap();
        let op = alg.operator_norm(&a, c(0.0, 0.0)).unwrap();
        let norm = alg.norm_eval(&a).unwrap();
        prop_assert!(op <= norm + 1e-9);
        for z in est.cloud.values() {
            prop_assert!(z.norm() <= op + 1e-9, "|z| = {} > ||a||_op = {op}", z.norm());
        }
    }

    #[test]
    fn hull_contains_cloud_and_keeps_the_radius(alg in gaussian_algebras(), seed in any::<u64>()) {
        let a = element(alg.dim(), seed);
        let est = spatial_range_with(&alg, &a, &opts(seed, 8)).unwrap();
        let zs = est.cloud.values();
        let (excess, _) = est.hull.max_excess(zs.iter().copied()).unwrap();
        prop_assert!(excess <= 1e-12 * (1.0 + est.radius), "excess {excess}");
        let cloud_radius = zs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert_eq!(cloud_radius, est.radius);
        prop_assert!((est.hull.max_modulus() - est.radius).abs() <= 1e-12 * (1.0 + est.radius));
    }

    #[test]
    fn difference_quotients_decrease_with_t((alg, a, lambda) in eligible_instances(), k in 0usize..64) {
        let theta = std::f64::consts::TAU * k as f64 / 64.0;
        for flavor in [Flavor::Op, Flavor::L1] {
            let u = unitize(&alg, flavor).unwrap();
            let b = u.embed(&UnitizedElement::new(a.clone(), lambda)).unwrap();
            let ts = [1.0, 0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3, 3e-4];
            let q = support_quotients(u.algebra(), &u.identity(), &b, theta, &ts);
            for w in q.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-9, "{q:?}");
            }
        }
    }

    #[test]
    fn disk_radius_is_the_norm((alg, a, lambda) in eligible_instances()) {
        let disk = v1_at_identity(&alg, &a, lambda).unwrap();
        prop_assert_eq!(disk.radius, alg.norm_eval(&a).unwrap());
        let nu = disk.polygon.max_modulus();
        prop_assert!((nu - (lambda.norm() + disk.radius)).abs() <= 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn refining_the_schedule_never_raises_the_support((alg, a, _l) in eligible_instances()) {
        let u = unitize(&alg, Flavor::Op).unwrap();
        let b = u.embed(&UnitizedElement::new(a, c(0.0, 0.0))).unwrap();
        let coarse = support_range_at_identity(u.algebra(), &u.identity(), &b, 90, &T_SCHEDULE[..3]).unwrap();
        let fine = support_range_at_identity(u.algebra(), &u.identity(), &b, 90, &T_SCHEDULE).unwrap();
        for (f, c) in fine.upper_support.iter().zip(&coarse.upper_support) {
            prop_assert!(f <= c);
        }
    }

    #[test]
    fn reports_are_reproducible((alg, a, lambda) in eligible_instances(), seed in 0u64..4) {
        let profile = ToleranceProfile { n_sphere: 200, n_dual: 10, seed, ..Default::default() };
        let r1 = serde_json::to_string(&check_thm24(&alg, &a, lambda, false, &profile).unwrap()).unwrap();
        let r2 = serde_json::to_string(&check_thm24(&alg, &a, lambda, false, &profile).unwrap()).unwrap();
        prop_assert_eq!(r1, r2);
    }
}

#[test]
fn gallery_case_reports_are_reproducible() {
    let profile = ToleranceProfile::default();
    for name in ["ex3.1", "ex3.2-IV", "ex3.3"] {
        let a = serde_json::to_string(&run_case(name, &profile).unwrap()).unwrap();
        let b = serde_json::to_string(&run_case(name, &profile).unwrap()).unwrap();
        assert_eq!(a, b, "{name}");
    }
}
