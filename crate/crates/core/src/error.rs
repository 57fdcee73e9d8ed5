use thiserror::Error;

use crate::algebra::Element;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("element is not on the unit sphere (norm {norm})")]
    OffSphere { norm: f64 },

    #[error("unsupported norm for {0}")]
    UnsupportedNorm(&'static str),

    #[error("algebra is not faithful: {witness:?} annihilates it from the left")]
    NotFaithful { witness: Element },

    #[error("algebra is unital with identity {identity:?}")]
    Unital { identity: Element },

    #[error("algebra has no identity")]
    NonUnital,

    #[error("identity does not have norm one (norm {0})")]
    IdentityNotNormalized(f64),

    #[error("subspace is not closed under multiplication (residual {0:e})")]
    NotSubalgebra(f64),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("no norming functional accepted: {0}")]
    NoFeasibleFunctional(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("algebra spec: {0}")]
    Spec(String),
}
