use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator vanished; the payload names the expression (and, when
    /// known, the stage of a composite computation where it happened).
    #[error("singular input: {0} vanishes")]
    Singular(String),

    #[error("slope must be nonzero")]
    ZeroSlope,

    #[error("group parameter must be nonzero")]
    ZeroScale,

    #[error("{action} is not a symmetry of {family}")]
    IncompatibleAction { action: String, family: String },

    #[error("vertex index {index} cannot be flipped in a path with {vertices} vertices")]
    IndexOutOfRange { index: usize, vertices: usize },

    #[error("flips at {i} and {j} share a stencil (|i - j| must exceed 1)")]
    BadIndices { i: usize, j: usize },

    #[error("retry budget exhausted: {skipped} of {requested} samples were singular")]
    RetryBudgetExhausted { requested: usize, skipped: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Prefix the location of a singularity; other variants pass through.
    pub fn at(self, stage: &str) -> Error {
        match self {
            Error::Singular(what) => Error::Singular(format!("{stage}: {what}")),
            other => other,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Error::Singular(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
