use serde::{Deserialize, Serialize};

use super::choi::{ChoiMatrix, SuperOperator};
use crate::error::{Error, Result};
use crate::numerics::{kron, ComplexMatrix, DensityMatrix, DEFAULT_TOL};

/// An ordered list of `k` Kraus operators, each `n_out x n_in`.
///
/// Construction only checks shapes. Completeness is reported by
/// [`KrausSet::check_cptp`] so that maps failing it can still be inspected.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    n_in: usize,
    n_out: usize,
    operators: Vec<ComplexMatrix>,
}

/// Completeness check result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CptpReport {
    /// `max |sum_i K_i^dagger K_i - 1|` entrywise.
    pub max_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::DimensionMismatch("a channel needs at least one Kraus operator".into()))?;
        let (n_out, n_in) = first.shape();
        if let Some(bad) = operators.iter().find(|k| k.shape() != (n_out, n_in)) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operators must share a shape: {}x{} vs {}x{}",
                n_out,
                n_in,
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(Self {
            n_in,
            n_out,
            operators,
        })
    }

    /// The identity channel on `n` levels, `{1_n}`.
    pub fn identity(n: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(n)]).expect("single operator")
    }

    /// Conjugation by a single operator, `rho -> U rho U^dagger`.
    pub fn unitary(u: ComplexMatrix) -> Self {
        Self::new(vec![u]).expect("single operator")
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    /// Number of Kraus operators (environment dimension).
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn into_operators(self) -> Vec<ComplexMatrix> {
        self.operators
    }

    /// `sum_i K_i^dagger K_i`.
    pub fn completeness(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.n_in, self.n_in);
        for k in &self.operators {
            acc = &acc + &(&k.dagger() * k);
        }
        acc
    }

    pub fn check_cptp(&self, tol: f64) -> CptpReport {
        let max_residual = self.completeness().max_abs_diff(&ComplexMatrix::identity(self.n_in));
        CptpReport {
            max_residual,
            tol,
            passed: max_residual <= tol,
        }
    }

    /// Errors unless completeness holds within `tol`.
    pub fn require_cptp(&self, tol: f64) -> Result<()> {
        let report = self.check_cptp(tol);
        if report.passed {
            Ok(())
        } else {
            Err(Error::NotTracePreserving {
                residual: report.max_residual,
            })
        }
    }

    /// `sum_i K_i X K_i^dagger` for an arbitrary `n_in x n_in` operator.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.n_in, self.n_in) {
            return Err(Error::DimensionMismatch(format!(
                "channel expects {n}x{n} input, got {}x{}",
                x.rows(),
                x.cols(),
                n = self.n_in
            )));
        }
        let mut acc = ComplexMatrix::zeros(self.n_out, self.n_out);
        for k in &self.operators {
            acc = &acc + &(&(k * x) * &k.dagger());
        }
        Ok(acc)
    }

    /// Output state `Phi(rho)`; the result must be a state within [`DEFAULT_TOL`].
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply_operator(rho.matrix())?;
        DensityMatrix::with_tolerance(out, DEFAULT_TOL)
    }

    /// Complementary channel via the index swap `K~^a_{ij} = K^i_{aj}`.
    ///
    /// Returns `n_out` operators of shape `k x n_in`.
    pub fn complementary(&self) -> KrausSet {
        let k = self.len();
        let ops = (0..self.n_out)
            .map(|alpha| ComplexMatrix::from_fn(k, self.n_in, |i, j| self.operators[i][(alpha, j)]))
            .collect();
        KrausSet::new(ops).expect("n_out >= 1")
    }

    /// Largest `|K^i_{aj} - K^a_{ij}|`, or `None` when `k != n_out`.
    pub fn tensor_asymmetry(&self) -> Option<f64> {
        if self.len() != self.n_out {
            return None;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.len() {
            for alpha in 0..self.n_out {
                for j in 0..self.n_in {
                    let d = (self.operators[i][(alpha, j)] - self.operators[alpha][(i, j)]).norm();
                    worst = worst.max(d);
                }
            }
        }
        Some(worst)
    }

    /// Strict selfcomplementarity: the Kraus 3-tensor is symmetric under
    /// exchanging the Kraus index with the output row index.
    pub fn is_selfcomplementary(&self, tol: f64) -> bool {
        self.tensor_asymmetry().is_some_and(|d| d <= tol)
    }

    /// `sum_i K_i (x) conj(K_i)`, acting on row-major vectorized inputs.
    pub fn to_superoperator(&self) -> SuperOperator {
        let n2 = self.n_in * self.n_in;
        let m2 = self.n_out * self.n_out;
        let mut acc = ComplexMatrix::zeros(m2, n2);
        for k in &self.operators {
            acc = &acc + &kron(k, &k.conj());
        }
        SuperOperator::from_parts(self.n_in, self.n_out, acc)
    }

    /// Unnormalized Choi matrix `D = sum_i |K_i>><<K_i|` (output (x) input ordering).
    pub fn to_choi(&self) -> ChoiMatrix {
        let d = self.n_in * self.n_out;
        let mut acc = ComplexMatrix::zeros(d, d);
        for k in &self.operators {
            let v = k.as_slice();
            acc = &acc + &ComplexMatrix::outer(v, v);
        }
        ChoiMatrix::from_parts(self.n_in, self.n_out, acc)
    }

    /// Tensor product channel with Kraus operators `A_i (x) B_j`, `(i, j)` lexicographic.
    pub fn tensor(&self, other: &KrausSet) -> KrausSet {
        let ops = self
            .operators
            .iter()
            .flat_map(|a| other.operators.iter().map(move |b| kron(a, b)))
            .collect();
        KrausSet::new(ops).expect("nonempty")
    }

    /// Applies `self` to the second factor of a bipartite input, `(1_d (x) Phi)`.
    pub fn extend_left(&self, ancilla_dim: usize) -> KrausSet {
        KrausSet::identity(ancilla_dim).tensor(self)
    }
}

/// Tensor product of two channels.
pub fn tensor_channel(a: &KrausSet, b: &KrausSet) -> KrausSet {
    a.tensor(b)
}

/// Concatenation `outer o inner` with Kraus operators `K_i L_j`, `(i, j)` lexicographic.
pub fn compose(outer: &KrausSet, inner: &KrausSet) -> Result<KrausSet> {
    if inner.n_out != outer.n_in {
        return Err(Error::DimensionMismatch(format!(
            "cannot feed a {}-level output into a {}-level input",
            inner.n_out, outer.n_in
        )));
    }
    let ops = outer
        .operators
        .iter()
        .flat_map(|k| inner.operators.iter().map(move |l| k * l))
        .collect();
    KrausSet::new(ops)
}
