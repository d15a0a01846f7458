use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient list has length {len}, expected order + 1 = {expected}")]
    LengthMismatch { len: usize, expected: usize },

    #[error("series has zero constant term and is not invertible")]
    NotInvertible,

    #[error("cannot differentiate a series of order 0")]
    DerivativeOfOrderZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sequence is not 1-admissible: {0}")]
    NotOneAdmissible(String),

    #[error("cremona indices must be distinct, got ({0}, {1}, {2})")]
    IndicesNotDistinct(usize, usize, usize),

    #[error("reduction precondition failed: {0}")]
    Precondition(String),

    #[error("reduction did not terminate: {0}")]
    NonReducing(String),

    #[error("invariant of class {0} could not be decided by the rewrite rules")]
    Undetermined(String),

    #[error("{method} budget n + g = {budget} exceeds guard {guard}; use the closed form or raise the guard")]
    GuardExceeded {
        method: &'static str,
        budget: u32,
        guard: u32,
    },

    #[error("coefficient {0} is not a non-negative integer")]
    NotANaturalNumber(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}
