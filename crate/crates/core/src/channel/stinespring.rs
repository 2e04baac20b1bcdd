use num_complex::Complex64;

use super::kraus::KrausSet;
use crate::error::{Error, Result};
use crate::numerics::{zero, ComplexMatrix, DEFAULT_TOL};

/// Unitary dilation of a channel on `n_sys` levels with an `n_env`-level environment.
///
/// The joint space is ordered environment (x) system and the environment
/// starts in its first basis state, so the first `n_sys` columns of the matrix
/// are the stacked Kraus operators: `K^i = <i|_env U |0>_env`.
#[derive(Debug, Clone, PartialEq)]
pub struct StinespringUnitary {
    n_sys: usize,
    n_env: usize,
    matrix: ComplexMatrix,
}

/// Residual below which a candidate basis vector is considered to lie in the
/// span already built during completion.
const COMPLETION_DROP: f64 = 1e-7;

impl StinespringUnitary {
    /// Builds the dilation of a square channel, completing the remaining
    /// columns by Gram-Schmidt against canonical basis vectors in index order.
    pub fn from_kraus(channel: &KrausSet) -> Result<Self> {
        Self::from_kraus_with_tol(channel, DEFAULT_TOL)
    }

    pub fn from_kraus_with_tol(channel: &KrausSet, tol: f64) -> Result<Self> {
        let n = channel.n_in();
        if channel.n_out() != n {
            return Err(Error::DimensionMismatch(format!(
                "square dilation needs n_out = n_in, got {} -> {}",
                n,
                channel.n_out()
            )));
        }
        channel.require_cptp(tol)?;
        let k = channel.len();
        let dim = n * k;

        let mut columns: Vec<Vec<Complex64>> = (0..n)
            .map(|col| {
                channel
                    .operators()
                    .iter()
                    .flat_map(|op| (0..n).map(move |row| op[(row, col)]))
                    .collect()
            })
            .collect();

        for candidate in 0..dim {
            if columns.len() == dim {
                break;
            }
            let mut v = vec![zero(); dim];
            v[candidate] = Complex64::new(1.0, 0.0);
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for u in &columns {
                    let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= overlap * ui;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > COMPLETION_DROP {
                columns.push(v.into_iter().map(|z| z / norm).collect());
            }
        }
        if columns.len() != dim {
            return Err(Error::NoConvergence(format!(
                "unitary completion found {} of {dim} columns",
                columns.len()
            )));
        }
        let matrix = ComplexMatrix::from_fn(dim, dim, |r, c| columns[c][r]);
        Ok(Self {
            n_sys: n,
            n_env: k,
            matrix,
        })
    }

    /// Wraps an existing joint unitary of size `n_sys * n_env`.
    pub fn from_matrix(matrix: ComplexMatrix, n_env: usize) -> Result<Self> {
        if !matrix.is_square() || n_env == 0 || matrix.rows() % n_env != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix cannot be split with a {n_env}-level environment",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let residual = matrix.unitarity_deviation();
        if residual > DEFAULT_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self {
            n_sys: matrix.rows() / n_env,
            n_env,
            matrix,
        })
    }

    pub fn n_sys(&self) -> usize {
        self.n_sys
    }

    pub fn n_env(&self) -> usize {
        self.n_env
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Reads the Kraus operators back from the first block-column.
    pub fn to_kraus(&self) -> KrausSet {
        let n = self.n_sys;
        let ops = (0..self.n_env).map(|i| self.matrix.block(i * n, 0, n, n)).collect();
        KrausSet::new(ops).expect("n_env >= 1")
    }
}

/// Kraus operators `K^i = <i|_env U |0>_env` of a joint unitary.
pub fn kraus_from_unitary(u: &ComplexMatrix, n_env: usize) -> Result<KrausSet> {
    Ok(StinespringUnitary::from_matrix(u.clone(), n_env)?.to_kraus())
}
