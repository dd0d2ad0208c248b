use thiserror::Error;

/// Errors raised by the engine, the catalog and the verifier.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("metric is degenerate (determinant {det})")]
    DegenerateMetric { det: String },

    #[error("basis change matrix is singular (determinant {det})")]
    SingularBasisChange { det: String },

    #[error("the zero vector has no direction to test against")]
    ZeroVector,

    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of a negative quantity ({value})")]
    NegativeRadicand { value: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("parse error in `{input}` at offset {offset}: {message}")]
    Parse {
        input: String,
        offset: usize,
        message: String,
    },

    #[error("unknown catalog case ({0}); cases are numbered 1 to 16")]
    UnknownCase(u8),

    #[error("case ({case}) parameters are inadmissible: requires {constraint}")]
    InadmissibleParams { case: u8, constraint: String },

    #[error("scan grid is empty")]
    EmptyGrid,

    #[error("malformed algebra description: {0}")]
    MalformedAlgebra(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
