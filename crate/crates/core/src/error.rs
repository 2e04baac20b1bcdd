use thiserror::Error;

/// Errors produced by the channel library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |A - A^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not unitary (max |U^dagger U - 1| = {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("channel is not trace preserving (completeness residual {residual:.3e})")]
    NotTracePreserving { residual: f64 },

    #[error("input states are not mutually orthogonal (overlap {overlap:.3e})")]
    NonOrthogonal { overlap: f64 },

    #[error("eigenvalue iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("spectrum is not real and nonnegative: {0}")]
    Spectrum(String),

    #[error("closed form is undefined at {argument} = {value}: {reason}")]
    ClosedFormUndefined {
        argument: &'static str,
        value: f64,
        reason: String,
    },

    #[error("unknown family id '{0}'")]
    UnknownFamily(String),

    #[error("malformed document: {0}")]
    Format(String),
}

impl Error {
    /// True for failures that originate in the numerical kernels rather than
    /// in caller-supplied parameters or documents.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::Spectrum(_)
                | Error::NotPositive { .. }
                | Error::NotHermitian { .. }
                | Error::ClosedFormUndefined { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
