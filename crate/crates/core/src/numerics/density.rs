use num_complex::Complex64;

use super::eigen::hermitian_eigenvalues;
use super::matrix::{re, ComplexMatrix};
use crate::error::{Error, Result};

/// Default Hermiticity and trace tolerance for [`DensityMatrix::new`].
pub const STATE_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted as rounding noise.
pub const PSD_TOL: f64 = 1e-10;

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, STATE_TOL)
    }

    /// Validates with `tol` for Hermiticity and trace; positivity always uses [`PSD_TOL`].
    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max deviation {deviation:.3e})"
            )));
        }
        let trace = matrix.trace();
        if (trace - re(1.0)).norm() > tol {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        let matrix = matrix.hermitian_part();
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || norm_sqr <= f64::MIN_POSITIVE {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let scaled: Vec<Complex64> = psi.iter().map(|z| z / norm_sqr.sqrt()).collect();
        Ok(Self {
            matrix: ComplexMatrix::outer(&scaled, &scaled),
        })
    }

    /// Computational basis projector `|index><index|`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} outside dimension {dim}"
            )));
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(index, index)] = re(1.0);
        Ok(Self { matrix: m })
    }

    /// The maximally mixed state `1 / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// `|phi+><phi+|` with `|phi+> = sum_i |ii> / sqrt(dim)`.
    pub fn maximally_entangled(dim: usize) -> Self {
        let mut psi = vec![re(0.0); dim * dim];
        for i in 0..dim {
            psi[i * dim + i] = re(1.0);
        }
        Self::pure(&psi).expect("nonzero vector")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("validated Hermitian")
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}
