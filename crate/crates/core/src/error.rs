use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("{0} is not supported for this form")]
    Unsupported(&'static str),

    #[error("{0} is not totally singular")]
    NotTotallySingular(String),

    #[error("expected a subspace of vector dimension {expected}, found {found}")]
    WrongSubspaceDim { expected: usize, found: usize },

    #[error("invalid polar space: {0}")]
    InvalidPolarSpace(String),

    #[error("wrong polar space type: {0}")]
    WrongType(String),

    #[error("id {id} out of range (have {len})")]
    InvalidId { id: usize, len: usize },

    #[error("id {0} is not a member of this half-spin family")]
    NotInFamily(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("space too large: {estimate} elements exceeds budget {budget}")]
    OverBudget { estimate: u128, budget: u128 },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
