//! Unitizations `A_e = A + C 1` with the operator norm or the `l1` norm.
//!
//! A unitization is materialized as an ordinary [`Algebra`] of dimension
//! `dim + 1` whose last coordinate is the coefficient of the adjoined
//! identity, so ranges and checks apply to it unchanged.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, NormSpec};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `||a + l 1|| = sup{||ax + lx|| : ||x|| <= 1}`.
    Op,
    /// `||a + l 1|| = ||a|| + |l|`.
    L1,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::Op => "op",
            Flavor::L1 => "l1",
        })
    }
}

/// `a + lambda 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitizedElement {
    pub a: Element,
    pub lambda: C64,
}

impl UnitizedElement {
    pub fn new(a: Element, lambda: C64) -> Self {
        Self { a, lambda }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Unitization {
    base: Arc<Algebra>,
    flavor: Flavor,
    algebra: Algebra,
    seminorm: bool,
}

/// `A_e` with the requested norm.
///
/// The operator flavor needs a faithful, non-unital base with a `p`-norm:
/// otherwise `a + l 1 -> L_{a + l 1}` is not injective and the operator
/// "norm" can vanish on nonzero elements.
pub fn unitize(base: &Algebra, flavor: Flavor) -> Result<Unitization> {
    if flavor == Flavor::Op {
        if base.p_exponent().is_none() {
            return Err(Error::UnsupportedNorm("operator unitization needs a p-norm base"));
        }
        let f = base.is_faithful();
        if let Some(witness) = f.witness {
            return Err(Error::NotFaithful { witness });
        }
        if let Some(identity) = base.find_identity() {
            return Err(Error::Unital { identity });
        }
    }
    build(base, flavor, false)
}

/// Like [`unitize`] but never refuses; the result is tagged as a seminorm
/// when the operator flavor's gates fail.
pub fn unitize_forced(base: &Algebra, flavor: Flavor) -> Result<Unitization> {
    match unitize(base, flavor) {
        Ok(u) => Ok(u),
        Err(Error::NotFaithful { .. } | Error::Unital { .. }) => build(base, flavor, true),
        Err(e) => Err(e),
    }
}

fn build(base: &Algebra, flavor: Flavor, seminorm: bool) -> Result<Unitization> {
    let d = base.dim();
    let base = Arc::new(base.clone());
    let norm = match flavor {
        Flavor::Op => NormSpec::UnitizationOp(base.clone()),
        Flavor::L1 => NormSpec::UnitizationL1(base.clone()),
    };
    let one = C64::new(1.0, 0.0);
    let algebra = Algebra::from_fn(d + 1, norm, |i, j, k| {
        if i < d && j < d && k < d {
            base.c(i, j, k)
        } else if (i == d && j == k) || (j == d && i == k) {
            one
        } else {
            C64::new(0.0, 0.0)
        }
    })?;
    let name = format!("{}_e^{}", base.name().unwrap_or("A"), flavor);
    Ok(Unitization { base, flavor, algebra: algebra.with_name(name), seminorm })
}

impl Unitization {
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn base_arc(&self) -> Arc<Algebra> {
        self.base.clone()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// The unitization as an algebra of dimension `base.dim() + 1`.
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Whether the operator norm is only a seminorm here.
    pub fn is_seminorm(&self) -> bool {
        self.seminorm
    }

    /// The adjoined identity `e_{dim+1}`.
    pub fn identity(&self) -> Element {
        Element::basis(self.algebra.dim(), self.base.dim())
    }

    /// Coordinates of `a + lambda 1`.
    pub fn embed(&self, u: &UnitizedElement) -> Result<Element> {
        if u.a.dim() != self.base.dim() {
            return Err(Error::DimensionMismatch { expected: self.base.dim(), found: u.a.dim() });
        }
        Ok(u.a.iter().copied().chain(std::iter::once(u.lambda)).collect())
    }

    pub fn split(&self, x: &Element) -> Result<UnitizedElement> {
        let d = self.base.dim();
        if x.dim() != d + 1 {
            return Err(Error::DimensionMismatch { expected: d + 1, found: x.dim() });
        }
        Ok(UnitizedElement { a: x[..d].iter().copied().collect(), lambda: x[d] })
    }
}

/// `(a + l 1)(b + m 1) = (ab + l b + m a) + l m 1`.
pub fn unitized_multiply(u: &Unitization, x: &UnitizedElement, y: &UnitizedElement) -> Result<UnitizedElement> {
    let ab = u.base.multiply(&x.a, &y.a)?;
    let a: Element = ab.iter().zip(y.a.iter()).zip(x.a.iter()).map(|((p, b), a)| p + x.lambda * b + y.lambda * a).collect();
    Ok(UnitizedElement { a, lambda: x.lambda * y.lambda })
}

pub fn unitization_norm_eval(u: &Unitization, x: &UnitizedElement) -> Result<f64> {
    match u.flavor {
        Flavor::L1 => Ok(u.base.norm_eval(&x.a)? + x.lambda.norm()),
        Flavor::Op => u.base.operator_norm(&x.a, x.lambda),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exponent;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn el(v: &[f64]) -> Element {
        Element::from_real(v)
    }

    #[test]
    fn l1_unitization_of_left_first_coordinate() {
        let base = Algebra::left_first_coordinate(Exponent::ONE);
        let u = unitize(&base, Flavor::L1).unwrap();
        let alg = u.algebra();
        let x = Element::new(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.3, 1.0)]);
        let y = Element::new(vec![c(0.0, 1.0), c(2.0, -1.0), c(-1.0, 0.5)]);
        let p = alg.multiply(&x, &y).unwrap();
        let expected = [x[0] * y[0] + x[0] * y[2] + x[2] * y[0], x[0] * y[1] + x[1] * y[2] + x[2] * y[1], x[2] * y[2]];
        for k in 0..3 {
            assert!((p[k] - expected[k]).norm() < 1e-12);
        }
        let v = unitization_norm_eval(&u, &UnitizedElement::new(el(&[1.0, 0.0]), c(-1.0, 0.0))).unwrap();
        assert_eq!(v, 2.0);
        assert_eq!(alg.norm_eval(&u.identity()).unwrap(), 1.0);
    }

    #[test]
    fn op_gates() {
        let base = Algebra::left_first_coordinate(Exponent::ONE);
        match unitize(&base, Flavor::Op) {
            Err(Error::NotFaithful { witness }) => assert_eq!(witness, el(&[0.0, 1.0])),
            other => panic!("{other:?}"),
        }
        assert!(unitize_forced(&base, Flavor::Op).unwrap().is_seminorm());
        let unital = Algebra::pointwise(2, Exponent::TWO);
        assert!(matches!(unitize(&unital, Flavor::Op), Err(Error::Unital { .. })));
        let good = Algebra::right_first_coordinate(2, Exponent::new(3.0).unwrap());
        let u = unitize(&good, Flavor::Op).unwrap();
        assert!(!u.is_seminorm());
        assert!((u.algebra().norm_eval(&u.identity()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitized_products() {
        let base = Algebra::right_first_coordinate(2, Exponent::ONE);
        let u = unitize(&base, Flavor::Op).unwrap();
        let a = Element::new(vec![c(1.0, 1.0), c(0.0, 2.0)]);
        let one = UnitizedElement::new(Element::zeros(2), c(1.0, 0.0));
        let x = UnitizedElement::new(a.clone(), c(0.0, 0.0));
        assert_eq!(unitized_multiply(&u, &x, &one).unwrap(), x);
        let lam = c(2.0, -1.0);
        let mu = c(0.5, 0.5);
        let r = unitized_multiply(&u, &UnitizedElement::new(a.clone(), lam), &UnitizedElement::new(Element::zeros(2), mu)).unwrap();
        assert!(r.a.max_abs_diff(&a.scale(mu)) < 1e-15);
        assert_eq!(r.lambda, lam * mu);
        // the materialized algebra agrees with the formula
        let xs = u.embed(&UnitizedElement::new(a.clone(), lam)).unwrap();
        let ys = u.embed(&UnitizedElement::new(el(&[0.3, -2.0]), mu)).unwrap();
        let direct = u.split(&u.algebra().multiply(&xs, &ys).unwrap()).unwrap();
        let formula = unitized_multiply(&u, &u.split(&xs).unwrap(), &u.split(&ys).unwrap()).unwrap();
        assert!(direct.a.max_abs_diff(&formula.a) < 1e-12);
        assert!((direct.lambda - formula.lambda).norm() < 1e-12);
    }

    #[test]
    fn op_norm_restricted_to_the_base() {
        let base = Algebra::right_first_coordinate(3, Exponent::TWO);
        let u = unitize(&base, Flavor::Op).unwrap();
        let a = Element::new(vec![c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.0)]);
        let via_u = unitization_norm_eval(&u, &UnitizedElement::new(a.clone(), c(0.0, 0.0))).unwrap();
        assert!((via_u - base.operator_norm(&a, c(0.0, 0.0)).unwrap()).abs() < 1e-12);
        let one = unitization_norm_eval(&u, &UnitizedElement::new(Element::zeros(3), c(1.0, 0.0))).unwrap();
        assert!((one - 1.0).abs() < 1e-12);
    }
}
