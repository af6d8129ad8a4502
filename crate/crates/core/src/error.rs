use thiserror::Error;

/// Errors raised by the lattice, heart, K3, flop and SL(2,Z) layers.
///
/// Every variant except [`Error::Parse`] is a contract violation: the input
/// parsed but broke an invariant of the operation it was handed to.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid root: self-pairing {got}, expected {expected}")]
    InvalidRoot { expected: i64, got: String },

    #[error("invalid spherical class: self-pairing {0}, expected -2")]
    InvalidSpherical(String),

    #[error("invalid central charge at simple {index}: {reason}")]
    InvalidCharge { index: usize, reason: String },

    #[error("invalid interval [{a},{b}] for heart with {n} vertices")]
    InvalidInterval { a: usize, b: usize, n: usize },

    #[error("zero object has no phase or HN filtration")]
    ZeroObject,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("matrix not in SL(2,Z): determinant {0}")]
    NotInSl2z(i64),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Failure loading a JSON document: bad syntax or schema (with position), or
/// a well-formed document describing an invalid object.
#[derive(Debug, Error)]
pub enum JsonError {
    #[error("{0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
}
