//! Kronecker products and bipartite reductions.
//!
//! Bipartite matrices use the index convention `(i1, i2) -> i1 * d2 + i2`,
//! i.e. the first tensor factor is the slow index.

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Which tensor factor of a bipartite space to keep or act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = b.shape();
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

fn check_bipartite(a: &ComplexMatrix, (d1, d2): (usize, usize)) -> Result<()> {
    if !a.is_square() || a.rows() != d1 * d2 || d1 == 0 || d2 == 0 {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not an operator on a {d1}x{d2} bipartite space",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Traces out one factor, returning the reduced operator on `keep`.
pub fn partial_trace(a: &ComplexMatrix, dims: (usize, usize), keep: Subsystem) -> Result<ComplexMatrix> {
    check_bipartite(a, dims)?;
    let (d1, d2) = dims;
    Ok(match keep {
        Subsystem::First => ComplexMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| a[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Subsystem::Second => ComplexMatrix::from_fn(d2, d2, |i, j| {
            (0..d1).map(|k| a[(k * d2 + i, k * d2 + j)]).sum()
        }),
    })
}

/// Transposes the first tensor factor only.
pub fn partial_transpose(a: &ComplexMatrix, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_bipartite(a, dims)?;
    let d2 = dims.1;
    Ok(ComplexMatrix::from_fn(a.rows(), a.cols(), |r, c| {
        let (i1, i2) = (r / d2, r % d2);
        let (j1, j2) = (c / d2, c % d2);
        a[(j1 * d2 + i2, i1 * d2 + j2)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::re;
    use num_complex::Complex64;

    fn sigma_y() -> ComplexMatrix {
        let i = Complex64::i();
        ComplexMatrix::from_rows(&[vec![re(0.0), -i], vec![i, re(0.0)]]).unwrap()
    }

    fn phi_plus() -> ComplexMatrix {
        let h = 0.5;
        ComplexMatrix::from_real(
            4,
            4,
            &[h, 0., 0., h, 0., 0., 0., 0., 0., 0., 0., 0., h, 0., 0., h],
        )
        .unwrap()
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)),
            ComplexMatrix::identity(4)
        );
        assert_eq!(
            kron(&ComplexMatrix::diag_real(&[1.0, 0.0]), &ComplexMatrix::diag_real(&[0.0, 1.0])),
            ComplexMatrix::diag_real(&[0.0, 1.0, 0.0, 0.0])
        );
        // sigma_y (x) sigma_y has antidiagonal (-1, 1, 1, -1)
        let yy = kron(&sigma_y(), &sigma_y());
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected[(0, 3)] = re(-1.0);
        expected[(1, 2)] = re(1.0);
        expected[(2, 1)] = re(1.0);
        expected[(3, 0)] = re(-1.0);
        assert!(yy.approx_eq(&expected, 0.0));
    }

    #[test]
    fn partial_trace_examples() {
        let reduced = partial_trace(&phi_plus(), (2, 2), Subsystem::First).unwrap();
        assert!(reduced.approx_eq(&ComplexMatrix::diag_real(&[0.5, 0.5]), 1e-15));

        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 7.0, 0.0, 2.0, 0.0, 5.0, 0.0, 3.0]).unwrap();
        let ab = kron(&a, &b);
        let keep_a = partial_trace(&ab, (2, 3), Subsystem::First).unwrap();
        assert!(keep_a.approx_eq(&a.scale(b.trace()), 1e-14));
        let keep_b = partial_trace(&ab, (2, 3), Subsystem::Second).unwrap();
        assert!(keep_b.approx_eq(&b.scale(a.trace()), 1e-14));

        assert!(partial_trace(&ab, (3, 3), Subsystem::First).is_err());
    }

    #[test]
    fn partial_transpose_examples() {
        let a = ComplexMatrix::from_rows(&[
            vec![re(1.0), Complex64::new(2.0, 1.0)],
            vec![re(3.0), re(4.0)],
        ])
        .unwrap();
        let b = sigma_y();
        let pt = partial_transpose(&kron(&a, &b), (2, 2)).unwrap();
        assert!(pt.approx_eq(&kron(&a.transpose(), &b), 0.0));

        // |phi+><phi+|^{T_A} = SWAP / 2
        let pt = partial_transpose(&phi_plus(), (2, 2)).unwrap();
        let swap = ComplexMatrix::from_real(
            4,
            4,
            &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.],
        )
        .unwrap();
        assert!(pt.approx_eq(&swap.scale_real(0.5), 0.0));

        assert!(partial_transpose(&a, (2, 2)).is_err());
    }
}
