use thiserror::Error;

/// Errors shared across state construction, matrix functions, entropies,
/// inequality checks, and the scan engine.
#[derive(Debug, Error)]
pub enum Error {
    /// A ket or matrix failed state validation (norm, Hermiticity, trace, positivity).
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// An eigenvalue is too negative for the input to be a state.
    #[error("not a state: eigenvalue {min_eigenvalue:.3e} below -1e-9")]
    NotAState { min_eigenvalue: f64 },
    /// A matrix entry is NaN or infinite.
    #[error("matrix has non-finite entries")]
    NonFinite,
    /// Logarithm of a matrix whose determinant magnitude is at or below tolerance.
    #[error("matrix not invertible: |det| = {det_abs:.3e} <= tol {tol:.3e}")]
    NotInvertible { det_abs: f64, tol: f64 },
    /// Entrywise comparison attempted on matrices with complex entries.
    #[error("entrywise order undefined: imaginary parts up to {max_imag:.3e}")]
    NotComparable { max_imag: f64 },
    /// A probability vector or joint table failed validation.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    /// Argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iteration did not converge or a residue check failed.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Scan configuration rejected before evaluation.
    #[error("invalid scan config: {0}")]
    Config(String),
    /// Output sink failure while emitting scan results.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
