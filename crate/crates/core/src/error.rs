use alloc::string::String;

/// Failures of well-formedness; falsified identities are reported, not raised.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("d^{degree} composed with d^{prev} is nonzero", prev = .degree.wrapping_sub(1))]
    NotAComplex { degree: usize },
    #[error("map does not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("degree {0} is outside the stored window")]
    OutOfWindow(usize),
    #[error("not a spark: {0}")]
    NotASpark(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("singular: {0}")]
    Singular(String),
}

pub type Result<T> = core::result::Result<T, Error>;
