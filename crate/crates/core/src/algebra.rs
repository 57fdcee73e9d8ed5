//! Finite-dimensional complex algebras given by dense structure constants.
//!
//! `e_i * e_j = sum_k c[i][j][k] e_k`. Multiplication is bilinear by
//! construction; associativity is not assumed and can be measured with
//! [`Algebra::associativity_defect`].

use std::ops::Deref;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::matrix::{Matrix, NormBounds};
use crate::sampling::gaussian_vector;
use crate::{ensure_finite, Error, Result, C64};

/// Relative tolerance for rank decisions in the structural predicates.
pub const RANK_TOL: f64 = 1e-10;
/// Seed for the random elements probed by [`Algebra::is_regular`].
pub const REGULARITY_SEED: u64 = 0x4e67;
/// Number of random elements probed by [`Algebra::is_regular`].
pub const REGULARITY_RANDOM: usize = 50;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A Hölder exponent `p` in `[1, inf]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Conjugate exponent: `1/p + 1/q = 1`, with `1 <-> inf`.
    pub fn dual(self) -> Exponent {
        if self.is_one() {
            Self::INFINITY
        } else if self.is_infinite() {
            Self::ONE
        } else {
            Self(self.0 / (self.0 - 1.0))
        }
    }

    pub fn norm(self, x: &[C64]) -> f64 {
        let max = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if self.is_infinite() || max == 0.0 {
            return max;
        }
        if self.is_one() {
            return x.iter().map(|z| z.norm()).sum();
        }
        if self.0 == 2.0 {
            return x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        }
        let s: f64 = x.iter().map(|z| (z.norm() / max).powf(self.0)).sum();
        max * s.powf(1.0 / self.0)
    }

    /// `x / ||x||_p`; the zero vector is returned unchanged.
    pub fn normalize(self, x: &[C64]) -> Vec<C64> {
        let n = self.norm(x);
        if n == 0.0 {
            return x.to_vec();
        }
        x.iter().map(|z| z / n).collect()
    }

    /// A vector `y` with `||y||_q = 1` and `sum w_k y_k = ||w||_p`.
    ///
    /// For `p = inf` the first maximal coordinate is used, for `p = 1`
    /// zero coordinates of `w` get `y_k = 0`.
    pub fn norming_vector(self, w: &[C64]) -> Vec<C64> {
        let norm = self.norm(w);
        let mut y = vec![ZERO; w.len()];
        if norm == 0.0 {
            return y;
        }
        if self.is_infinite() {
            let (k, _) = w.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).unwrap();
            y[k] = w[k].conj() / w[k].norm();
        } else if self.is_one() {
            for (yk, wk) in y.iter_mut().zip(w) {
                if wk.norm() > 0.0 {
                    *yk = wk.conj() / wk.norm();
                }
            }
        } else {
            for (yk, wk) in y.iter_mut().zip(w) {
                let r = wk.norm() / norm;
                if r > 0.0 {
                    *yk = (wk.conj() / wk.norm()) * r.powf(self.0 - 1.0);
                }
            }
        }
        y
    }
}

/// Finite exponents serialize as numbers, the infinite one as `"inf"`.
impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let p = match Raw::deserialize(d)? {
            Raw::Num(p) => p,
            Raw::Text(s) if s == "inf" || s == "infinity" => f64::INFINITY,
            Raw::Text(s) => return Err(serde::de::Error::custom(format!("exponent must be a number or \"inf\", got \"{s}\""))),
        };
        Exponent::new(p).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Coefficient vector of an algebra element in the standard basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<C64>);

impl Element {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self(coeffs.iter().map(|&r| C64::new(r, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![ZERO; dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = vec![ZERO; dim];
        v[k] = ONE;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.0
    }

    pub fn scale(&self, alpha: C64) -> Element {
        Self(self.0.iter().map(|z| z * alpha).collect())
    }

    pub fn add(&self, other: &Element) -> Element {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Largest coordinate modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Element) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Deref for Element {
    type Target = [C64];

    fn deref(&self) -> &[C64] {
        &self.0
    }
}

impl From<Vec<C64>> for Element {
    fn from(v: Vec<C64>) -> Self {
        Self(v)
    }
}

impl FromIterator<C64> for Element {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// A norm on `C^n`, evaluated on raw coordinates.
pub trait Norm: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[C64]) -> f64;
}

/// Which norm an [`Algebra`] carries.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    /// Coordinate `p`-norm.
    P(Exponent),
    /// `||x||_op = ||L_x||` on the same space, induced from `base`.
    InducedOperator(Arc<Algebra>),
    /// `||a + l 1|| = ||a||_base + |l|` on `base` plus one adjoined coordinate.
    UnitizationL1(Arc<Algebra>),
    /// `||a + l 1|| = sup ||ax + lx||` over the unit ball of `base`.
    UnitizationOp(Arc<Algebra>),
    /// The ambient norm of `sum_i beta_i b_i` for a basis `b` of a subspace.
    Restricted { ambient: Arc<Algebra>, basis: Vec<Element> },
}

impl NormSpec {
    fn expected_dim(&self) -> Option<usize> {
        match self {
            NormSpec::P(_) => None,
            NormSpec::InducedOperator(base) => Some(base.dim),
            NormSpec::UnitizationL1(base) | NormSpec::UnitizationOp(base) => Some(base.dim + 1),
            NormSpec::Restricted { basis, .. } => Some(basis.len()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            NormSpec::P(p) => format!("l{p}"),
            NormSpec::InducedOperator(base) => format!("operator norm induced by {}", base.norm.describe()),
            NormSpec::UnitizationL1(base) => format!("l1 unitization of {}", base.norm.describe()),
            NormSpec::UnitizationOp(base) => format!("operator unitization of {}", base.norm.describe()),
            NormSpec::Restricted { ambient, .. } => format!("restriction of {}", ambient.norm.describe()),
        }
    }
}

/// Result of [`Algebra::is_faithful`].
#[derive(Debug, Clone, PartialEq)]
pub struct Faithfulness {
    pub faithful: bool,
    /// Nonzero `a` with `a A = {0}`, largest coordinate scaled to 1.
    pub witness: Option<Element>,
}

/// Element where `||a||_op < (1 - tol) ||a||`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityWitness {
    pub element: Element,
    pub op_norm: f64,
    pub norm: f64,
    /// `norm - op_norm`.
    pub gap: f64,
}

/// Result of [`Algebra::is_regular`] over its finite probe set.
#[derive(Debug, Clone, PartialEq)]
pub struct Regularity {
    pub regular: bool,
    /// First probe (in test order) that failed.
    pub witness: Option<RegularityWitness>,
    /// Smallest observed `||a||_op / ||a||`.
    pub min_ratio: f64,
    pub tested: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    name: Option<String>,
    dim: usize,
    structure: Vec<C64>,
    norm: NormSpec,
}

impl Algebra {
    /// `structure[(i * dim + j) * dim + k] = c[i][j][k]`.
    pub fn new(dim: usize, structure: Vec<C64>, norm: NormSpec) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: structure.len() });
        }
        ensure_finite(&structure, "structure constants")?;
        if let Some(expected) = norm.expected_dim() {
            if expected != dim {
                return Err(Error::DimensionMismatch { expected, found: dim });
            }
        }
        Ok(Self { name: None, dim, structure, norm })
    }

    pub fn from_fn(dim: usize, norm: NormSpec, f: impl Fn(usize, usize, usize) -> C64) -> Result<Self> {
        let mut structure = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    structure.push(f(i, j, k));
                }
            }
        }
        Self::new(dim, structure, norm)
    }

    /// `C^2` with `xy = (x1 y1, x1 y2) = x1 y`: non-unital, not faithful.
    pub fn left_first_coordinate(p: Exponent) -> Self {
        Self::from_fn(2, NormSpec::P(p), |i, j, k| if i == 0 && j == k { ONE } else { ZERO }).unwrap().with_name("x1*y")
    }

    /// `C^n` with `xy = x y1`: non-unital, faithful, and `||.||_p` is regular.
    pub fn right_first_coordinate(dim: usize, p: Exponent) -> Self {
        Self::from_fn(dim, NormSpec::P(p), |i, j, k| if j == 0 && i == k { ONE } else { ZERO }).unwrap().with_name("x*y1")
    }

    /// `C^n` with the pointwise product.
    pub fn pointwise(dim: usize, p: Exponent) -> Self {
        Self::from_fn(dim, NormSpec::P(p), |i, j, k| if i == j && j == k { ONE } else { ZERO }).unwrap().with_name("pointwise")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Same product, different norm.
    pub fn with_norm(&self, norm: NormSpec) -> Result<Self> {
        let mut out = Self::new(self.dim, self.structure.clone(), norm)?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Multiplies the structure constants by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self { name: self.name.clone(), dim: self.dim, structure: self.structure.iter().map(|z| z * s).collect(), norm: self.norm.clone() }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_spec(&self) -> &NormSpec {
        &self.norm
    }

    pub fn structure(&self) -> &[C64] {
        &self.structure
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> C64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// The exponent when the norm is a coordinate `p`-norm.
    pub fn p_exponent(&self) -> Option<Exponent> {
        match self.norm {
            NormSpec::P(p) => Some(p),
            _ => None,
        }
    }

    fn check_dim(&self, x: &[C64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        ensure_finite(x, "element")
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(Element(self.mul_raw(x, y)))
    }

    pub(crate) fn mul_raw(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for (i, xi) in x.iter().enumerate() {
            if *xi == ZERO {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let w = xi * yj;
                if w == ZERO {
                    continue;
                }
                let row = &self.structure[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += w * c;
                }
            }
        }
        out
    }

    pub fn norm_eval(&self, x: &Element) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.norm_raw(x))
    }

    pub(crate) fn norm_raw(&self, x: &[C64]) -> f64 {
        match &self.norm {
            NormSpec::P(p) => p.norm(x),
            NormSpec::InducedOperator(base) => base.op_norm_raw(x, ZERO),
            NormSpec::UnitizationL1(base) => base.norm_raw(&x[..base.dim]) + x[base.dim].norm(),
            NormSpec::UnitizationOp(base) => base.op_norm_raw(&x[..base.dim], x[base.dim]),
            NormSpec::Restricted { ambient, basis } => {
                let mut v = vec![ZERO; ambient.dim];
                for (beta, b) in x.iter().zip(basis) {
                    for (o, bk) in v.iter_mut().zip(b.iter()) {
                        *o += beta * bk;
                    }
                }
                ambient.norm_raw(&v)
            }
        }
    }

    /// The two-sided identity, if one exists.
    pub fn find_identity(&self) -> Option<Element> {
        let n = self.dim;
        // rows (j, k) for e*e_j = e_j, then (j, k) for e_j*e = e_j
        let mut system = Matrix::zeros(2 * n * n, n);
        let mut rhs = vec![ZERO; 2 * n * n];
        for j in 0..n {
            for k in 0..n {
                let left = j * n + k;
                let right = n * n + left;
                for i in 0..n {
                    system[(left, i)] = self.c(i, j, k);
                    system[(right, i)] = self.c(j, i, k);
                }
                if j == k {
                    rhs[left] = ONE;
                    rhs[right] = ONE;
                }
            }
        }
        let e = Element(system.solve(&rhs, RANK_TOL)?);
        let scale = self.structure.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let ok = (0..n).all(|j| {
            let ej = Element::basis(n, j);
            let l = self.mul_raw(&e, &ej);
            let r = self.mul_raw(&ej, &e);
            Element(l).max_abs_diff(&ej) <= 1e-9 * scale && Element(r).max_abs_diff(&ej) <= 1e-9 * scale
        });
        ok.then_some(e)
    }

    /// Whether `a A = {0}` forces `a = 0`.
    pub fn is_faithful(&self) -> Faithfulness {
        let n = self.dim;
        // column i is vec(L_{e_i}); rows indexed by (k, j)
        let mut map = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    map[(k * n + j, i)] = self.c(i, j, k);
                }
            }
        }
        let witness = map.nullspace(RANK_TOL).into_iter().next().map(Element);
        Faithfulness { faithful: witness.is_none(), witness }
    }

    /// Matrix of `x -> a x + lambda x`.
    pub fn left_mult_matrix(&self, a: &Element, lambda: C64) -> Result<Matrix> {
        self.check_dim(a)?;
        ensure_finite(&[lambda], "scalar")?;
        Ok(self.left_mult_raw(a, lambda))
    }

    pub(crate) fn left_mult_raw(&self, a: &[C64], lambda: C64) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, ai) in a.iter().enumerate() {
            if *ai == ZERO {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    m[(k, j)] += ai * self.c(i, j, k);
                }
            }
        }
        for j in 0..n {
            m[(j, j)] += lambda;
        }
        m
    }

    /// `||a + lambda 1||_op = sup{||ax + lambda x|| : ||x|| <= 1}`.
    pub fn operator_norm(&self, a: &Element, lambda: C64) -> Result<f64> {
        Ok(self.operator_norm_bounds(a, lambda)?.value)
    }

    pub fn operator_norm_bounds(&self, a: &Element, lambda: C64) -> Result<NormBounds> {
        let p = self.p_exponent().ok_or(Error::UnsupportedNorm("operator norm"))?;
        let m = self.left_mult_matrix(a, lambda)?;
        Ok(m.induced_norm(p))
    }

    fn op_norm_raw(&self, a: &[C64], lambda: C64) -> f64 {
        let p = self.p_exponent().expect("operator norms are induced from p-norms");
        self.left_mult_raw(a, lambda).induced_norm(p).value
    }

    /// Probes `||a||_op >= (1 - tol) ||a||` on every basis vector, every
    /// sum of two basis vectors and [`REGULARITY_RANDOM`] seeded random
    /// elements. This is a finite surrogate for a universal property.
    pub fn is_regular(&self, tol: f64) -> Result<Regularity> {
        if self.p_exponent().is_none() {
            return Err(Error::UnsupportedNorm("regularity test"));
        }
        let n = self.dim;
        let mut probes: Vec<Element> = (0..n).map(|k| Element::basis(n, k)).collect();
        for i in 0..n {
            for j in i + 1..n {
                probes.push(Element::basis(n, i).add(&Element::basis(n, j)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(REGULARITY_SEED);
        probes.extend((0..REGULARITY_RANDOM).map(|_| Element(gaussian_vector(&mut rng, n))));

        let mut witness = None;
        let mut min_ratio = f64::INFINITY;
        for a in &probes {
            let norm = self.norm_raw(a);
            if norm == 0.0 {
                continue;
            }
            let op = self.op_norm_raw(a, ZERO);
            min_ratio = min_ratio.min(op / norm);
            if witness.is_none() && op < (1.0 - tol) * norm {
                witness = Some(RegularityWitness { element: a.clone(), op_norm: op, norm, gap: norm - op });
            }
        }
        Ok(Regularity { regular: witness.is_none(), witness, min_ratio, tested: probes.len() })
    }

    /// `max |(e_i e_j) e_l - e_i (e_j e_l)|` over all basis triples.
    pub fn associativity_defect(&self) -> f64 {
        let n = self.dim;
        let basis: Vec<Element> = (0..n).map(|k| Element::basis(n, k)).collect();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_raw(&basis[i], &basis[j]);
                for l in 0..n {
                    let left = self.mul_raw(&ij, &basis[l]);
                    let jl = self.mul_raw(&basis[j], &basis[l]);
                    let right = self.mul_raw(&basis[i], &jl);
                    worst = worst.max(Element(left).max_abs_diff(&Element(right)));
                }
            }
        }
        worst
    }

    pub fn is_associative(&self, tol: f64) -> bool {
        self.associativity_defect() <= tol
    }
}

impl Norm for Algebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[C64]) -> f64 {
        self.norm_raw(x)
    }
}

/// Draws a complex Gaussian element; used by tests and the random suite.
pub fn random_element(dim: usize, seed: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Element(gaussian_vector(&mut rng, dim))
}
