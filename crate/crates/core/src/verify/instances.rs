//! Seeded random normed algebras for the randomized suite.
//!
//! Instances are associative: each is a model product transported to a
//! random basis, `x * y = T^{-1}((T x)(T y))`, then rescaled so that the
//! `p`-norm is sub-multiplicative. Draws that are not faithful or that have
//! an identity are counted and filtered, not silently resampled.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element, Exponent, NormSpec};
use crate::matrix::Matrix;
use crate::sampling::{gaussian_vector, stream_rng, streams};
use crate::{Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// `xy = g(y) x` for a linear functional `g`: faithful, non-unital.
    RightFunctional,
    /// `xy = g(x) y`: annihilated by `ker g`, so not faithful.
    LeftFunctional,
    /// Pointwise product: unital.
    Pointwise,
    /// `C` times the `xy = x y_1` algebra on `C^2`: faithful, non-unital.
    ScalarPlusRight,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomInstance {
    pub index: u64,
    pub model: Model,
    pub p: Exponent,
    #[serde(skip)]
    pub algebra: Algebra,
    pub a: Element,
    pub lambda: C64,
    pub faithful: bool,
    pub unital: bool,
    /// Factor applied to the transported structure constants.
    pub scale: f64,
}

impl RandomInstance {
    pub fn eligible(&self) -> bool {
        self.faithful && !self.unital
    }

    pub fn label(&self) -> String {
        format!("random #{} ({:?}, dim {}, l{})", self.index, self.model, self.algebra.dim(), self.p)
    }
}

/// The accepted instances of a suite together with the filter counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteDraw {
    pub accepted: Vec<RandomInstance>,
    pub drawn: usize,
    pub filtered_not_faithful: usize,
    pub filtered_unital: usize,
}

fn model_structure(model: Model, dim: usize, g: &[C64]) -> impl Fn(usize, usize, usize) -> C64 + '_ {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    move |i, j, k| match model {
        Model::RightFunctional => {
            if i == k {
                g[j]
            } else {
                zero
            }
        }
        Model::LeftFunctional => {
            if j == k {
                g[i]
            } else {
                zero
            }
        }
        Model::Pointwise => {
            if i == j && j == k {
                one
            } else {
                zero
            }
        }
        Model::ScalarPlusRight => {
            debug_assert_eq!(dim, 3);
            match (i, j, k) {
                (0, 0, 0) => one,
                (1, 1, 1) | (2, 1, 2) => one,
                _ => zero,
            }
        }
    }
}

/// Instance number `index` of the stream keyed by `seed`.
pub fn random_instance(seed: u64, index: u64) -> Result<RandomInstance> {
    let mut rng = stream_rng(seed, streams::INSTANCES, index);
    let dim = if rng.random::<bool>() { 2 } else { 3 };
    let p = [Exponent::ONE, Exponent::TWO, Exponent::INFINITY][rng.random_range(0..3)];
    let models: &[Model] = if dim == 3 {
        &[Model::RightFunctional, Model::LeftFunctional, Model::Pointwise, Model::ScalarPlusRight]
    } else {
        &[Model::RightFunctional, Model::LeftFunctional, Model::Pointwise]
    };
    let model = models[rng.random_range(0..models.len())];
    let g = gaussian_vector(&mut rng, dim);
    let model_alg = Algebra::from_fn(dim, NormSpec::P(p), model_structure(model, dim, &g))?;

    // T = I + G / 2 keeps the change of basis well conditioned
    let mut t = Matrix::identity(dim);
    for (k, z) in gaussian_vector(&mut rng, dim * dim).into_iter().enumerate() {
        t[(k / dim, k % dim)] += z * 0.5;
    }
    let t_inv = t.inverse().ok_or_else(|| crate::Error::InvalidArgument("singular change of basis".into()))?;
    let columns: Vec<Vec<C64>> = (0..dim).map(|i| t.column(i)).collect();
    let mut structure = Vec::with_capacity(dim * dim * dim);
    for ci in &columns {
        for cj in &columns {
            structure.extend(t_inv.mul_vec(&model_alg.mul_raw(ci, cj)));
        }
    }
    let transported = Algebra::new(dim, structure, NormSpec::P(p))?;

    // ||xy|| <= ||x||_1 max_i ||L_{e_i}|| ||y|| <= n^{1 - 1/p} max_i ||L_{e_i}|| ||x|| ||y||
    let n = dim as f64;
    let factor = if p.is_infinite() { n } else { n.powf(1.0 - 1.0 / p.value()) };
    let max_left = (0..dim)
        .map(|i| {
            let l = transported.left_mult_raw(&Element::basis(dim, i), C64::new(0.0, 0.0));
            if p.is_one() {
                l.norm_1()
            } else if p.is_infinite() {
                l.norm_inf()
            } else {
                l.frobenius()
            }
        })
        .fold(0.0, f64::max);
    let scale = if max_left > 0.0 { 1.0 / (factor * max_left) } else { 1.0 };
    let algebra = transported.scaled(scale).with_name(format!("random-{seed}-{index}"));

    let a = Element::new(gaussian_vector(&mut rng, dim));
    let lambda = gaussian_vector(&mut rng, 1)[0];
    let faithful = algebra.is_faithful().faithful;
    let unital = algebra.find_identity().is_some();
    Ok(RandomInstance { index, model, p, algebra, a, lambda, faithful, unital, scale })
}

/// Draws instances in index order until `count` are faithful and
/// non-unital.
pub fn random_suite(count: usize, seed: u64) -> Result<SuiteDraw> {
    let mut draw = SuiteDraw { accepted: Vec::new(), drawn: 0, filtered_not_faithful: 0, filtered_unital: 0 };
    let mut index = 0;
    while draw.accepted.len() < count {
        let inst = random_instance(seed, index)?;
        index += 1;
        draw.drawn += 1;
        if !inst.faithful {
            draw.filtered_not_faithful += 1;
        } else if inst.unital {
            draw.filtered_unital += 1;
        } else {
            draw.accepted.push(inst);
        }
    }
    Ok(draw)
}
