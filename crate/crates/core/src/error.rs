use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate edge {a} {b}")]
    DuplicateEdge { a: String, b: String },

    #[error("self-loop on vertex {0}")]
    SelfLoop(String),

    #[error("edge {a} {b} has non-positive weight {weight}")]
    NonPositiveWeight { a: String, b: String, weight: f64 },

    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(String, String),

    #[error("graph has no edges")]
    Empty,

    #[error("vertex index {index} out of range for graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("generator size out of range: {0}")]
    SizeOutOfRange(String),

    #[error("eigensolver did not converge (achieved off-diagonal residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("invalid dimension parameter {0}: must be > 1 or inf")]
    InvalidDimension(String),

    #[error("inadmissible alpha {alpha}: must exceed 2 - 2*kappa/lambda = {bound}")]
    InadmissibleAlpha { alpha: f64, bound: f64 },

    #[error("eigenvalue bound needs positive diameter and degree (D = {diameter}, d = {degree})")]
    DegenerateBound { diameter: usize, degree: f64 },

    #[error("function has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("function value at vertex {0} is not finite")]
    NonFinite(usize),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
