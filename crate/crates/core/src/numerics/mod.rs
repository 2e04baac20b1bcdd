//! Dense complex linear algebra used by every other module.

mod density;
mod eigen;
mod matrix;
mod tensor;

pub use density::{DensityMatrix, PSD_TOL, STATE_TOL};
pub use eigen::{
    general_eigenvalues, hermitian_eigen, hermitian_eigenvalues, sanitize_nonnegative_spectrum, svd_values,
    HermitianEigen, HERMITIAN_TOL, SPECTRUM_CLIP,
};
pub use matrix::ComplexMatrix;
pub(crate) use matrix::{one, re, zero};
pub use tensor::{dagger, kron, partial_trace, partial_transpose, Subsystem};

/// Default absolute entrywise tolerance for structural checks.
pub const DEFAULT_TOL: f64 = 1e-10;
