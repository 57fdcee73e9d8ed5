//! Spatial numerical ranges of finite-dimensional normed algebras.
//!
//! An [`Algebra`] is a dense structure-constant tensor over `C^n` together
//! with a [`NormSpec`]. On top of it the crate computes duality sets of unit
//! vectors, samples the spatial numerical range `V(a) = {phi(ax)}`, builds
//! convex hulls and support-function oracles in the complex plane, forms
//! unitizations with the operator and `l1` norms, and runs structured checks
//! relating all of these.

pub mod algebra;
pub mod duality;
mod error;
pub mod geometry;
pub mod io;
pub mod matrix;
mod par;
pub mod range;
pub mod sampling;
pub mod unitize;
pub mod verify;

pub use algebra::{Algebra, Element, Exponent, Norm, NormSpec};
pub use error::{Error, Result};
pub use par::Exec;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

pub(crate) fn ensure_finite(values: &[C64], what: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
