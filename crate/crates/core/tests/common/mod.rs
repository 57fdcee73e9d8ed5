//! Seeded algebras and elements shared by the property tests.

#![allow(dead_code)]

use num_complex::Complex64 as C64;
use numrange_core::sampling::{gaussian_vector, stream_rng};
use numrange_core::verify::random_instance;
use numrange_core::{Algebra, Element, Exponent, NormSpec};
use proptest::prelude::*;

pub const STREAM: u64 = 900;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn exponents() -> impl Strategy<Value = Exponent> {
    prop_oneof![Just(Exponent::ONE), Just(Exponent::TWO), Just(Exponent::INFINITY), (1.1f64..6.0).prop_map(|p| Exponent::new(p).unwrap()),]
}

/// Gaussian structure constants rescaled so the `p`-norm is
/// sub-multiplicative; not associative in general.
pub fn gaussian_algebra(dim: usize, p: Exponent, seed: u64) -> Algebra {
    let mut rng = stream_rng(seed, STREAM, 0);
    let raw = Algebra::new(dim, gaussian_vector(&mut rng, dim * dim * dim), NormSpec::P(p)).unwrap();
    let n = dim as f64;
    let factor = if p.is_infinite() { n } else { n.powf(1.0 - 1.0 / p.value()) };
    let max_left = (0..dim).map(|i| raw.operator_norm(&Element::basis(dim, i), c(0.0, 0.0)).unwrap()).fold(0.0, f64::max);
    raw.scaled(1.0 / (factor * max_left))
}

pub fn gaussian_algebras() -> impl Strategy<Value = Algebra> {
    (2usize..=3, exponents(), any::<u64>()).prop_map(|(d, p, s)| gaussian_algebra(d, p, s))
}

/// Associative, sub-multiplicative, faithful and non-unital.
pub fn eligible_instances() -> impl Strategy<Value = (Algebra, Element, C64)> {
    (any::<u64>(), 0u64..4).prop_filter_map("not eligible", |(seed, idx)| {
        let inst = random_instance(seed, idx).ok()?;
        inst.eligible().then_some((inst.algebra, inst.a, inst.lambda))
    })
}

pub fn element(dim: usize, seed: u64) -> Element {
    Element::new(gaussian_vector(&mut stream_rng(seed, STREAM, 1), dim))
}

pub fn scalar(seed: u64) -> C64 {
    gaussian_vector(&mut stream_rng(seed, STREAM, 2), 1)[0]
}

pub fn unit_scalar(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn unit(alg: &Algebra, seed: u64) -> Element {
    let v = element(alg.dim(), seed);
    numrange_core::sampling::normalize(alg, &v).unwrap()
}
