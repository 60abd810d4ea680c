use thiserror::Error;

/// Errors surfaced by the engine and the brute-force oracle.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested operation is not defined for this operator model.
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    /// Not enough data to perform the computation (short eigenvalue lists,
    /// degenerate fit ranges, and the like).
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The query depends on a tail limit that the family declares as Unknown.
    #[error("undeclared tail limit: {0}")]
    UndeclaredLimit(String),

    /// A dense matrix exceeds the oracle's dimension cap.
    #[error("dimension {dim} exceeds the dense-oracle cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    /// The dense eigensolver did not converge.
    #[error("eigensolver failed to converge on a {0}x{0} matrix")]
    EigensolveFailure(usize),

    /// A truncated block is singular at the requested shift, so its
    /// resolvent block cannot be formed.
    #[error("singular truncation: {0}")]
    SingularTruncation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
