//! Random unitaries, states and channels for property tests and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::KrausSet;
use crate::numerics::{ComplexMatrix, DensityMatrix};

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Orthonormalizes the columns of a tall matrix (modified Gram-Schmidt).
fn orthonormal_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(m.cols());
    for c in 0..m.cols() {
        let mut v = m.column(c);
        for _ in 0..2 {
            for u in &cols {
                let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= overlap * ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(m.rows(), m.cols(), |r, c| cols[c][r])
}

/// Haar-distributed `n x n` unitary.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    orthonormal_columns(&ginibre(n, n, rng))
}

pub fn random_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let psi = ginibre(n, 1, rng).into_vec();
    DensityMatrix::pure(&psi).expect("nonzero Gaussian vector")
}

/// Hilbert-Schmidt random mixed state.
pub fn random_density_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(n, n, rng);
    let w = &g * &g.dagger();
    let tr = w.trace().re;
    DensityMatrix::new(w.scale_real(1.0 / tr).hermitian_part()).expect("positive by construction")
}

/// Random CPTP map with `k` Kraus operators, cut from a random isometry
/// `C^{n_in} -> C^k (x) C^{n_out}`.
pub fn random_channel<R: Rng + ?Sized>(n_in: usize, n_out: usize, k: usize, rng: &mut R) -> KrausSet {
    assert!(n_in <= n_out * k, "isometry needs n_in <= n_out * k");
    let v = orthonormal_columns(&ginibre(n_out * k, n_in, rng));
    let ops = (0..k).map(|i| v.block(i * n_out, 0, n_out, n_in)).collect();
    KrausSet::new(ops).expect("k >= 1")
}
