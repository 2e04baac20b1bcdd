//! Spectral kernels: Hermitian eigensolver and SVD (backed by nalgebra), and a
//! complex shifted-QR eigenvalue solver for general square matrices.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::matrix::{zero, ComplexMatrix};
use crate::error::{Error, Result};

/// Hermiticity required by the Hermitian solvers.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues with imaginary parts or negative real parts up to this size are
/// treated as rounding noise by [`sanitize_nonnegative_spectrum`].
pub const SPECTRUM_CLIP: f64 = 1e-9;

const MAX_SWEEPS: usize = 10_000;

/// Eigenpairs of a Hermitian matrix, ascending by eigenvalue.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors, `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl HermitianEigen {
    /// `sum_i lambda_i |v_i><v_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            for r in 0..n {
                for c in 0..n {
                    out[(r, c)] += v[r] * v[c].conj() * lambda;
                }
            }
        }
        out
    }
}

fn require_hermitian(a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let deviation = a.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    require_hermitian(a)?;
    let m = a.hermitian_part().to_nalgebra();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, MAX_SWEEPS)
        .ok_or_else(|| Error::NoConvergence(format!("Hermitian eigensolver on {}x{}", a.rows(), a.cols())))?;

    let mut order: Vec<usize> = (0..a.rows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    Ok(HermitianEigen {
        values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
        vectors: order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect(),
    })
}

/// Real spectrum of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(a)?.values)
}

/// Singular values in descending order.
pub fn svd_values(a: &ComplexMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = a.to_nalgebra().singular_values().iter().copied().collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

/// Clips rounding noise from a spectrum that should be real and nonnegative.
///
/// `|Im| <= clip * scale` is dropped and `Re` in `[-clip * scale, 0)` becomes zero;
/// anything larger is reported as an error.
pub fn sanitize_nonnegative_spectrum(values: &[Complex64], clip: f64, scale: f64) -> Result<Vec<f64>> {
    let bound = clip * scale.max(1.0);
    values
        .iter()
        .map(|z| {
            if z.im.abs() > bound {
                Err(Error::Spectrum(format!("eigenvalue {z} has imaginary part above {bound:.1e}")))
            } else if z.re < -bound {
                Err(Error::Spectrum(format!("eigenvalue {z} is negative beyond {bound:.1e}")))
            } else {
                Ok(z.re.max(0.0))
            }
        })
        .collect()
}

/// Full complex spectrum of a general square matrix (unordered).
///
/// Householder reduction to Hessenberg form followed by single-shift complex QR
/// iterations with Wilkinson shifts and deflation.
pub fn general_eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = hessenberg(a);
    let norm = a.norm().max(f64::MIN_POSITIVE);
    let mut eig = vec![zero(); n];
    let max_iter = 60 * n.max(2);

    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total_iter = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * diag || sub <= f64::EPSILON * 1e-3 * norm {
                h[(lo, lo - 1)] = zero();
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig_2x2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eig[lo] = l1;
            eig[hi] = l2;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total_iter += 1;
        if iter > max_iter {
            return Err(Error::NoConvergence(format!(
                "complex QR stalled on rows {lo}..={hi} of a {n}x{n} matrix after {total_iter} sweeps \
                 (subdiagonal {:.3e})",
                h[(hi, hi - 1)].norm()
            )));
        }

        let shift = if iter % 11 == 0 {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    Ok(eig)
}

fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    (half_tr + disc, half_tr - disc)
}

fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let (l1, l2) = eig_2x2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
    let corner = h[(hi, hi)];
    if (l1 - corner).norm() <= (l2 - corner).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR step `H - mu = QR`, `H <- RQ + mu` on the block `lo..=hi`.
fn qr_sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for col in k..=hi {
            let x = h[(k, col)];
            let y = h[(k + 1, col)];
            h[(k, col)] = x * c + s * y;
            h[(k + 1, col)] = -s.conj() * x + y * c;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        for row in lo..=(k + 1).min(hi) {
            let x = h[(row, k)];
            let y = h[(row, k + 1)];
            h[(row, k)] = x * c + s.conj() * y;
            h[(row, k + 1)] = -s * x + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, zero());
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = ((k + 1)..n).map(|r| h[(r, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- (I - 2 v v^dagger) H
        for col in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i, col)])
                .sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, col)] -= vi * dot * 2.0;
            }
        }
        // H <- H (I - 2 v v^dagger)
        for row in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| h[(row, k + 1 + i)] * vi)
                .sum();
            for (i, vi) in v.iter().enumerate() {
                h[(row, k + 1 + i)] -= dot * vi.conj() * 2.0;
            }
        }
        for r in (k + 2)..n {
            h[(r, k)] = zero();
        }
    }
    h
}
