use thiserror::Error;

pub type Result<T> = std::result::Result<T, HoloformError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoloformError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("map has {found} components, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("degree mismatch for {what}: expected {expected}, found {found}")]
    DegreeMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("linear part is not invertible")]
    SingularLinearPart,

    #[error("invalid jet germ: {0}")]
    InvalidGerm(String),

    #[error("variable universes differ")]
    UniverseMismatch,

    #[error("no form assigned to variable `{0}`")]
    MissingAssignment(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error(
        "source degree 0 is not classified: natural operators on functions include \
         nonlinear examples such as f -> f*df, which are not of the form P(f, df) with \
         constant coefficients in the graded algebra; use source degrees >= 1"
    )]
    ZeroSourceDegree,

    #[error("subspace is not invariant under the generator E_{a}{b}")]
    NotInvariant { a: usize, b: usize },

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("invalid witness case: {0}")]
    InvalidWitness(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
