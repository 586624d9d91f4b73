use thiserror::Error;

/// Errors raised by the coefficient calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("logarithm of a series whose constant term is not 1")]
    LogConstantNotOne,
    #[error("composition requires the inner series to have zero constant term")]
    ComposeConstantNonZero,
    #[error("exponential requires a series with zero constant term")]
    ExpConstantNonZero,
    #[error("genus series must have constant term 1")]
    GenusConstantNotOne,
    #[error("ring context mismatch")]
    ContextMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("invalid intersection data: {0}")]
    InvalidIntersection(String),
    #[error("invalid germ: {0}")]
    InvalidGerm(String),
    #[error(
        "singularity is not isolated: local algebra dimension {low} at degree bound {bound} \
         but {high} at degree bound {}", bound + 2
    )]
    NonIsolated { bound: usize, low: usize, high: usize },
    #[error("spectrum unsupported for {0} germs")]
    SpectrumUnsupported(&'static str),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("rank-deficient design matrix (conditioning {conditioning:.3e})")]
    RankDeficient { conditioning: f64 },
    #[error("matrix is not Hermitian at sample {0}")]
    NonHermitian(usize),
    #[error("function is not positive on the grid at |t| = {0:e}")]
    NonPositive(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
