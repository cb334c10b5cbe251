use thiserror::Error;

/// Broad classes of failure, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or inconsistent input supplied by the caller.
    Input,
    /// A numerical result contradicted an exactly known quantity.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside [0, {n})")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("frame vectors must be non-empty and share one dimension: {0}")]
    DimensionMismatch(String),
    #[error("vectors do not span the space (smallest frame-operator eigenvalue {0:e})")]
    NotAFrame(f64),

    #[error("graph has rank 0, no frame (no edges)")]
    NoEdges,
    #[error("expected {expected} shift vectors (one per component), got {got}")]
    ShiftCountMismatch { expected: usize, got: usize },
    #[error("frame is not generated by the graph (residual {0:e})")]
    NotGraphFrame(f64),
    #[error("survey size {0} is outside the supported range 2..=6")]
    SurveyRange(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NoConvergence { .. } | Error::InternalConsistency(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
