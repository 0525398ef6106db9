use thiserror::Error;

/// Errors produced by state construction, validation and simulation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m[i][j] - conj(m[j][i])| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is not 1 (got {trace})")]
    NotUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("state vector is not normalized (|amplitudes|^2 sums to {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwoDim { dim: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("resulting dimension {dim} exceeds the {max}-qubit cap")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("operation supports only single-qubit states, got dimension {dim}")]
    UnsupportedDimension { dim: usize },

    #[error("subsystem index {index} out of range for {n_qubits} qubits")]
    InvalidSubsystem { index: usize, n_qubits: usize },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid probability distribution: {reason}")]
    InvalidDistribution { reason: String },

    #[error("invalid ensemble: {reason}")]
    InvalidEnsemble { reason: String },

    #[error("measurement basis mismatch: expected {expected}, got {actual}")]
    BasisMismatch { expected: String, actual: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
