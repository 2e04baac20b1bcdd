use std::cmp::Ordering;

use super::kraus::KrausSet;
use crate::error::{Error, Result};
use crate::numerics::{
    hermitian_eigen, partial_trace, ComplexMatrix, DensityMatrix, Subsystem, DEFAULT_TOL, PSD_TOL,
};

/// Channel matrix acting on row-major vectorized density matrices,
/// `vec(Phi(rho)) = S vec(rho)`; shape `n_out^2 x n_in^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    n_in: usize,
    n_out: usize,
    matrix: ComplexMatrix,
}

/// Unnormalized Choi matrix `D` (trace `n_in`), indexed output (x) input:
/// `D[(a, j), (b, l)] = <a| Phi(|j><l|) |b>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    n_in: usize,
    n_out: usize,
    matrix: ComplexMatrix,
}

/// Eigenvalues at or below this are dropped when extracting Kraus operators.
pub const RANK_TOL: f64 = 1e-10;

/// Realignment between the two index layouts:
/// `D[(a, j), (b, l)] = S[(a, b), (j, l)]`.
fn superop_to_choi_layout(s: &ComplexMatrix, n_in: usize, n_out: usize) -> ComplexMatrix {
    let d = n_in * n_out;
    ComplexMatrix::from_fn(d, d, |r, c| {
        let (a, j) = (r / n_in, r % n_in);
        let (b, l) = (c / n_in, c % n_in);
        s[(a * n_out + b, j * n_in + l)]
    })
}

fn choi_to_superop_layout(d: &ComplexMatrix, n_in: usize, n_out: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n_out * n_out, n_in * n_in, |r, c| {
        let (a, b) = (r / n_out, r % n_out);
        let (j, l) = (c / n_in, c % n_in);
        d[(a * n_in + j, b * n_in + l)]
    })
}

/// Reshuffles an `n_out^2 x n_in^2` matrix into `(n_out n_in) x (n_out n_in)`.
pub fn reshuffle(m: &ComplexMatrix, n_in: usize, n_out: usize) -> Result<ComplexMatrix> {
    if m.shape() != (n_out * n_out, n_in * n_in) {
        return Err(Error::DimensionMismatch(format!(
            "reshuffle expects {}x{}, got {}x{}",
            n_out * n_out,
            n_in * n_in,
            m.rows(),
            m.cols()
        )));
    }
    Ok(superop_to_choi_layout(m, n_in, n_out))
}

/// Inverse of [`reshuffle`].
pub fn unreshuffle(m: &ComplexMatrix, n_in: usize, n_out: usize) -> Result<ComplexMatrix> {
    let d = n_in * n_out;
    if m.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "unreshuffle expects {d}x{d}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(choi_to_superop_layout(m, n_in, n_out))
}

impl SuperOperator {
    pub fn new(n_in: usize, n_out: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.shape() != (n_out * n_out, n_in * n_in) {
            return Err(Error::DimensionMismatch(format!(
                "superoperator for {n_in} -> {n_out} levels must be {}x{}",
                n_out * n_out,
                n_in * n_in
            )));
        }
        Ok(Self { n_in, n_out, matrix })
    }

    pub(crate) fn from_parts(n_in: usize, n_out: usize, matrix: ComplexMatrix) -> Self {
        Self { n_in, n_out, matrix }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Applies the channel to an `n_in x n_in` operator.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.n_in, self.n_in) {
            return Err(Error::DimensionMismatch(format!(
                "superoperator expects {n}x{n} input",
                n = self.n_in
            )));
        }
        let out = self.matrix.mul_vec(x.as_slice())?;
        ComplexMatrix::new(self.n_out, self.n_out, out)
    }

    pub fn to_choi(&self) -> ChoiMatrix {
        ChoiMatrix::from_parts(
            self.n_in,
            self.n_out,
            superop_to_choi_layout(&self.matrix, self.n_in, self.n_out),
        )
    }
}

impl ChoiMatrix {
    pub fn new(n_in: usize, n_out: usize, matrix: ComplexMatrix) -> Result<Self> {
        let d = n_in * n_out;
        if matrix.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix for {n_in} -> {n_out} levels must be {d}x{d}"
            )));
        }
        Ok(Self { n_in, n_out, matrix })
    }

    pub(crate) fn from_parts(n_in: usize, n_out: usize, matrix: ComplexMatrix) -> Self {
        Self { n_in, n_out, matrix }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Bipartite dimensions in storage order, `(n_out, n_in)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.n_out, self.n_in)
    }

    pub fn to_superoperator(&self) -> SuperOperator {
        SuperOperator::from_parts(
            self.n_in,
            self.n_out,
            choi_to_superop_layout(&self.matrix, self.n_in, self.n_out),
        )
    }

    /// Reduction onto the input factor (output traced out); equals `1_N` for
    /// trace-preserving channels.
    pub fn input_marginal(&self) -> ComplexMatrix {
        partial_trace(&self.matrix, self.dims(), Subsystem::Second).expect("dims match by construction")
    }

    pub fn trace_preservation_residual(&self) -> f64 {
        self.input_marginal().max_abs_diff(&ComplexMatrix::identity(self.n_in))
    }

    /// Choi-Jamiolkowski state `D / n_in`.
    pub fn normalized_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::with_tolerance(self.matrix.scale_real(1.0 / self.n_in as f64), DEFAULT_TOL)
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> Result<usize> {
        let eig = hermitian_eigen(&self.matrix)?;
        Ok(eig.values.iter().filter(|&&v| v > tol).count())
    }

    /// Minimal Kraus decomposition from the spectral decomposition.
    ///
    /// Operators are ordered by descending eigenvalue; near-ties (within
    /// [`RANK_TOL`]) are ordered lexicographically by the real parts of the
    /// phase-fixed eigenvector entries.
    pub fn to_kraus(&self) -> Result<KrausSet> {
        let eig = hermitian_eigen(&self.matrix)?;
        let min = eig.values[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        let mut pairs: Vec<(f64, Vec<_>)> = eig
            .values
            .into_iter()
            .zip(eig.vectors)
            .filter(|(v, _)| *v > RANK_TOL)
            .map(|(v, vec)| (v, fix_phase(vec)))
            .collect();
        if pairs.is_empty() {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        pairs.sort_by(|(la, va), (lb, vb)| {
            if (la - lb).abs() > RANK_TOL {
                lb.total_cmp(la)
            } else {
                va.iter()
                    .zip(vb)
                    .map(|(x, y)| x.re.total_cmp(&y.re))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            }
        });
        let ops = pairs
            .into_iter()
            .map(|(lambda, v)| {
                let scaled = v.into_iter().map(|z| z * lambda.sqrt()).collect();
                ComplexMatrix::new(self.n_out, self.n_in, scaled).expect("shape from dims")
            })
            .collect();
        KrausSet::new(ops)
    }
}

/// Rotates a vector so that its first largest-modulus entry is real and positive.
fn fix_phase(mut v: Vec<num_complex::Complex64>) -> Vec<num_complex::Complex64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(pivot) = v.iter().find(|z| z.norm() >= max * (1.0 - 1e-12)).copied() {
        if pivot.norm() > 0.0 {
            let phase = pivot.conj() / pivot.norm();
            for z in &mut v {
                *z *= phase;
            }
        }
    }
    v
}

/// Channel rank: eigenvalues of the Choi matrix above `tol`.
pub fn channel_rank(choi: &ChoiMatrix, tol: f64) -> Result<usize> {
    choi.rank(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::numerics::re;

    #[test]
    fn identity_choi_is_scaled_bell_projector() {
        let choi = KrausSet::identity(2).to_superoperator().to_choi();
        let bell = DensityMatrix::maximally_entangled(2);
        assert!(choi.matrix().approx_eq(&bell.matrix().scale_real(2.0), 1e-15));
        assert_eq!(choi.rank(DEFAULT_TOL).unwrap(), 1);
    }

    #[test]
    fn superop_route_agrees_with_direct_choi() {
        let ch = families::qubit_family_a(0.9, 0.5).unwrap();
        let via_superop = ch.to_superoperator().to_choi();
        assert!(via_superop.matrix().approx_eq(ch.to_choi().matrix(), 1e-15));
    }

    #[test]
    fn reshuffle_twice_is_identity_for_square_channels() {
        let s = families::qubit_family_b(0.4, 1.0).unwrap().to_superoperator();
        let once = reshuffle(s.matrix(), 2, 2).unwrap();
        let twice = reshuffle(&once, 2, 2).unwrap();
        assert!(twice.approx_eq(s.matrix(), 0.0));
    }

    #[test]
    fn trace_preservation_marginal() {
        let choi = families::qubit_family_a(0.0, 0.0).unwrap().to_choi();
        assert!(choi.input_marginal().approx_eq(&ComplexMatrix::identity(2), 1e-15));
    }

    #[test]
    fn choi_to_kraus_examples() {
        let back = KrausSet::identity(2).to_choi().to_kraus().unwrap();
        assert_eq!(back.len(), 1);
        let u = &back.operators()[0];
        assert!(u.approx_eq(&ComplexMatrix::identity(2), 1e-12));

        for &theta in &[0.0, 0.5, 1.4, 3.0] {
            let back = families::qubit_family_a(theta, 0.0).unwrap().to_choi().to_kraus().unwrap();
            assert_eq!(back.len(), 2);
        }
    }

    #[test]
    fn choi_to_kraus_rejects_non_psd() {
        let bad = ChoiMatrix::new(1, 2, ComplexMatrix::diag_real(&[1.0, -0.5])).unwrap();
        assert!(matches!(bad.to_kraus(), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(channel_rank(&KrausSet::identity(2).to_choi(), DEFAULT_TOL).unwrap(), 1);
        assert_eq!(
            channel_rank(&families::qubit_family_a(1.0, 2.0).unwrap().to_choi(), DEFAULT_TOL).unwrap(),
            2
        );
        assert_eq!(channel_rank(&families::depolarizing(1.0).unwrap().to_choi(), DEFAULT_TOL).unwrap(), 4);
    }

    #[test]
    fn superoperator_apply_matches_kraus_apply() {
        let ch = families::qubit_family_a(0.8, 0.2).unwrap();
        let x = ComplexMatrix::from_rows(&[vec![re(0.3), re(0.1)], vec![re(0.1), re(0.7)]]).unwrap();
        let a = ch.to_superoperator().apply(&x).unwrap();
        let b = ch.apply_operator(&x).unwrap();
        assert!(a.approx_eq(&b, 1e-15));
    }
}
