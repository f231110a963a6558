use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("odd variable `{0}` appears twice in a product")]
    OddSquare(String),
    #[error("degree mismatch for `{var}`: expected degree {expected}, found {found}")]
    DegreeMismatch { var: String, expected: i32, found: String },
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in chart")]
    DuplicateVariable(String),
    #[error("parse error at offset {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
    #[error("chart has no base/fiber split")]
    NotSplit,
    #[error("bivector is not Poisson: [pi,pi] = {0}")]
    NotPoisson(String),
    #[error("structure constants violate Jacobi: {0}")]
    NotLieAlgebra(String),
    #[error("element is not triangular: [r,r] = {0}")]
    NotTriangular(String),
    #[error("morphism table is missing word {0}")]
    TruncationIncomplete(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
