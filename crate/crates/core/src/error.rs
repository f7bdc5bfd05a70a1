use thiserror::Error;

/// Errors raised by the evaluation, bound, and search routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no terms")]
    NoTerms,
    #[error("series of order {have} cannot be used at order {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),
    #[error("monomial degree must be at least 1")]
    ZeroDegree,
    #[error("not a probability vector: {0}")]
    NotProbabilityVector(String),
    #[error("outside Lemma 3 domain: {0}")]
    OutsideLemma3Domain(String),
    #[error("degenerate: c\u{2081} on boundary (|c\u{2081}| = {0})")]
    DegenerateBoundary(f64),
    #[error("input not in P-representable range (|x| = {0})")]
    NotRepresentable(f64),
    #[error("not a normalized series: {0}")]
    NotNormalized(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rotation factor must have unit modulus, got |eta| = {0}")]
    NotUnimodular(f64),
    #[error("matrix is not square")]
    NonSquare,
    #[error("need coefficients through a_{need}, have a_{have}")]
    InsufficientCoefficients { have: usize, need: usize },
    #[error("ratio undefined; use hankel_lambda directly")]
    RatioUndefined,
    #[error("outside theorem hypothesis: {0}")]
    OutsideHypothesis(String),
    #[error("not representable by Lemma 3 alone: {0}")]
    NotLemma3Representable(String),
    #[error("coefficient CSV: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;
