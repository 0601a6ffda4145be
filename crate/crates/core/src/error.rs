use thiserror::Error;

/// Failures raised by the lattice, exterior-algebra and subtorus layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("rank deficient: expected rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },

    /// The basis spans a sublattice of index > 1 in its saturation, so the
    /// induced map of tori is a covering onto its image, not an embedding.
    #[error("not an embedding: basis has Smith invariant factor {invariant}")]
    Embedding { invariant: String },

    #[error("basis is not primitive: {0}")]
    Primitivity(String),

    #[error("spec mismatch: {0}")]
    Spec(String),

    #[error("variance mismatch: {0}")]
    Variance(String),

    #[error("matrix is not invertible over the integers (determinant {det})")]
    NotInvertible { det: String },

    #[error("subtori are not transverse")]
    NotTransverse,

    #[error("parse error: {0}")]
    Parse(String),

    /// An identity that must hold by theory failed on concrete input.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Short machine-readable tag, used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Rank { .. } => "rank",
            Error::Embedding { .. } => "embedding",
            Error::Primitivity(_) => "primitivity",
            Error::Spec(_) => "spec",
            Error::Variance(_) => "variance",
            Error::NotInvertible { .. } => "not-invertible",
            Error::NotTransverse => "not-transverse",
            Error::Parse(_) => "parse",
            Error::Inconsistent(_) => "inconsistent",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
