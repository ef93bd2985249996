use thiserror::Error;

/// Errors produced by simulator operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("matrix is not unitary: max residual {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotUnitary { deviation: f64, tolerance: f64 },

    #[error("mode count mismatch: {left} vs {right}")]
    ModeCountMismatch { left: usize, right: usize },

    #[error("photon number mismatch: input carries {input}, output carries {output}")]
    PhotonNumberMismatch { input: usize, output: usize },

    #[error("{quantity} cap exceeded: requested {requested}, cap is {limit}")]
    ResourceLimit {
        quantity: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Gram matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    GramNotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
