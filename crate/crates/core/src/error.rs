use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degenerate transform: {0}")]
    DegenerateTransform(String),
    #[error("eigengap assumption violated: {0}")]
    GapViolation(String),
    #[error("no valid interval choice: {0}")]
    NoValidInterval(String),
    #[error("no feasible affine transform among {evaluations} evaluated points")]
    NoFeasibleTransform { evaluations: usize },
    #[error("node {node} has degree zero")]
    DegreeZero { node: usize },
    #[error("random regular graph generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
