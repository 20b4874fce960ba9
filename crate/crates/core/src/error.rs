use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SdsError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("polynomial is not homogeneous (found total degrees {first} and {second})")]
    NotHomogeneous { first: u32, second: u32 },

    #[error("at least one variable is required")]
    NoVariables,

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("chain index {index} out of range 1..={max}")]
    ChainIndexOutOfRange { index: usize, max: usize },

    #[error("{what} exceeds the configured limit ({requested} > {limit})")]
    LimitExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("point is not in the standard simplex")]
    NotInSimplex,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, SdsError>;
