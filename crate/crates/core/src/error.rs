use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid sector {0}")]
    InvalidSector(String),
    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),
    #[error("normal basis is infinite: {0}")]
    InfiniteBasis(String),
    #[error("empty weight list")]
    EmptyWeights,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("third marking order {0} does not divide gcd {1}")]
    BadThirdOrder(u64, u64),
    #[error("marking {index}: order {order} does not match band order {band} of its sector")]
    MarkingOrder { index: usize, order: u64, band: u64 },
    #[error("monomial `{0}` is not a normal basis monomial")]
    NotNormal(String),
    #[error("confluence guard failed: {0}")]
    NotConfluent(String),
    #[error("pairing matrix is degenerate")]
    DegeneratePairing,
    #[error("unstable correlator: beta = 0 with {0} insertions")]
    Unstable(usize),
    #[error("correlator has no insertion {0}")]
    MissingInsertion(String),
    #[error("divisor equation applies only to untwisted degree-one classes, not {0}")]
    TwistedDivisor(String),
    #[error("missing correlator entries: {0:?}")]
    MissingEntries(Vec<String>),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
