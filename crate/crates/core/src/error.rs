use thiserror::Error as ThisError;

/// Failure modes shared across the crate.
///
/// `Config` marks input that was rejected before any computation started.
/// Every other variant signals that a mathematical precondition or a numeric
/// invariant was violated while computing.
#[derive(Debug, Clone, ThisError)]
pub enum Error {
    /// A scalar parameter lies outside its mathematical domain.
    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },

    /// A probability vector failed its normalization check.
    #[error("pmf mass differs from 1 by {defect:.3e} (tolerance {tolerance:.1e})")]
    Normalization { defect: f64, tolerance: f64 },

    /// An operation that needs at least one element received none.
    #[error("{what} must not be empty")]
    EmptyInput { what: &'static str },

    /// The dense statevector oracle refuses systems above its size cap.
    #[error("{n_spins} spins exceeds the dense-oracle cap of {cap}")]
    SizeCap { n_spins: u64, cap: u32 },

    /// A vector family fed to the overlap bound is not an orthonormal basis.
    #[error("basis is not orthonormal (worst defect {defect:.3e})")]
    NotOrthonormal { defect: f64 },

    /// A matrix handed to the oracle is not Hermitian.
    #[error("matrix is not Hermitian (worst asymmetry {defect:.3e})")]
    NotHermitian { defect: f64 },

    /// The Gaussian surrogate cannot represent a zero-variance distribution.
    #[error("basis weight {weight} gives zero variance; exact pmf is a point mass")]
    DegenerateVariance { weight: f64 },

    /// Run configuration rejected during validation.
    #[error("invalid configuration for {field}: {message}")]
    Config { field: &'static str, message: String },
}

impl Error {
    /// True when the error is a configuration problem rather than a numeric one.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config { .. })
    }
}
