use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet 1..={n}")]
    LetterOutOfRange { letter: u32, n: usize },

    #[error("word {0} is not a down-up alternating word")]
    NotAlternating(String),

    #[error("word {0} is not an admissible path")]
    Inadmissible(String),

    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    MismatchedVariables(usize, usize),

    #[error("polynomial division leaves a remainder")]
    InexactDivision,

    #[error("denominator constant term must be 1")]
    UnnormalizedDenominator,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("backend {backend} cannot count {vector}: {reason}")]
    BackendIncompatible {
        backend: String,
        vector: String,
        reason: String,
    },

    #[error("no nonzero diagonal with index {index} (found {available})")]
    NoSuchDiagonal { index: usize, available: usize },

    #[error("sequence of length {len} has no difference row of order {order}")]
    InsufficientLength { len: usize, order: usize },

    #[error("cannot parse {0:?} as a reflection vector")]
    ParseVector(String),
}

pub type Result<T> = std::result::Result<T, Error>;
