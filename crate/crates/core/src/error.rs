use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level N = {0} is not supported (need N >= 3)")]
    InvalidLevel(u32),

    #[error("division by zero in Q(mu_{0})")]
    DivisionByZero(u32),

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, u32),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("coefficient of a word of degree {degree} is unknowable at truncation degree {max_degree}")]
    TruncationExceeded { degree: usize, max_degree: usize },

    #[error("word {0} ends in the zero letter and is not a Y-word")]
    NotInY(String),

    #[error("series is not supported on the expected sub-alphabet: {0}")]
    SupportViolation(String),

    #[error("size {size} exceeds the configured cap {cap}")]
    ResourceCap { size: u128, cap: u128 },

    #[error("{0} does not divide {1}")]
    NotADivisor(u32, u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("divergent index: {0}")]
    Divergent(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unknown alphabet tag {0:?}")]
    UnknownAlphabet(String),

    #[error("letter {letter} out of range for N = {n}")]
    LetterRange { letter: i64, n: u32 },

    #[error("coefficient vector has length {got}, expected {expected}")]
    CoeffLength { expected: usize, got: usize },

    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error("series is flagged rational but has an irrational coefficient on word {0}")]
    NotRational(String),

    #[error("word of degree {degree} exceeds max_degree {max_degree}")]
    DegreeExceeded { degree: usize, max_degree: usize },

    #[error("unsupported level N = {0}")]
    Level(u32),

    #[error("duplicate word {0}")]
    Duplicate(String),
}
