use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime")]
    InvalidModulus(u32),
    #[error("entry {entry} is not a residue mod {p}")]
    EntryOutOfRange { entry: u32, p: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("not idempotent")]
    NotIdempotent,
    #[error("membership failure: {0}")]
    Membership(String),
    #[error("pair not strong")]
    NotStrong,
    #[error("algebra not verified Gorenstein within bound {0}")]
    NotGorenstein(usize),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("inconsistent lifting system: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
