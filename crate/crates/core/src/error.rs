use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and structure layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no embedding of a {n}-th root of unity in order-{order} scalars ({n} does not divide {order})")]
    UnsupportedEmbedding { n: u64, order: u64 },
    #[error("value is not an {n}-th root of unity")]
    NotRootOfUnity { n: u64 },
    #[error("exponential generator value must be nonzero")]
    ZeroExponentialValue,
    #[error("function has a nontrivial exponential part, so it is not a generalized polynomial")]
    NotGeneralizedPolynomial,
    #[error("the zero function has no degree certificate")]
    ZeroFunction,
    #[error("exponential list must be pairwise distinct")]
    DuplicateExponentials,
    #[error("component decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("ill-posed instance: {0}")]
    IllPosed(String),
    #[error("operation requires a finite group (free rank 0)")]
    NotFinite,
    #[error("function is not in lifted form: {0}")]
    NotLiftedForm(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
