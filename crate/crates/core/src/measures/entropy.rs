use crate::channel::KrausSet;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, DensityMatrix, DEFAULT_TOL};

/// Eigenvalues at or below this are exact zeros in entropy sums.
pub const ENTROPY_ZERO: f64 = 1e-14;

const PROBABILITY_TOL: f64 = 1e-12;
const ORTHOGONALITY_TOL: f64 = 1e-10;
const PURITY_TOL: f64 = 1e-10;

/// Shannon entropy `-sum p ln p` of a spectrum, in nats.
pub fn shannon_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&p| p > ENTROPY_ZERO)
        .map(|&p| -p * p.ln())
        .sum()
}

/// `S(rho) = -Tr(rho ln rho)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(&rho.eigenvalues())
}

/// Entropy of the normalized Choi state `D / n_in`.
pub fn map_entropy(channel: &KrausSet) -> Result<f64> {
    channel.require_cptp(DEFAULT_TOL)?;
    Ok(von_neumann_entropy(&channel.to_choi().normalized_state()?))
}

/// `S(Phi(rho)) - S(Phi~(rho))`.
pub fn coherent_information(channel: &KrausSet, rho: &DensityMatrix) -> Result<f64> {
    let out = channel.apply(rho)?;
    let env = channel.complementary().apply(rho)?;
    Ok(von_neumann_entropy(&out) - von_neumann_entropy(&env))
}

/// A finite ensemble `{p_i, rho_i}`.
#[derive(Debug, Clone)]
pub struct Ensemble {
    probabilities: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(probabilities: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if probabilities.is_empty() || probabilities.len() != states.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} probabilities for {} states",
                probabilities.len(),
                states.len()
            )));
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch("ensemble states differ in dimension".into()));
        }
        if let Some(&p) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::OutOfRange {
                name: "probability",
                value: p,
                range: "[0, 1]",
            });
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::OutOfRange {
                name: "sum of probabilities",
                value: total,
                range: "1 +- 1e-12",
            });
        }
        Ok(Self { probabilities, states })
    }

    /// Equal weights over `states`.
    pub fn uniform(states: Vec<DensityMatrix>) -> Result<Self> {
        let n = states.len().max(1);
        Self::new(vec![1.0 / n as f64; states.len()], states)
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    /// `sum_i p_i rho_i`.
    pub fn average(&self) -> Result<DensityMatrix> {
        let dim = self.states[0].dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (p, s) in self.probabilities.iter().zip(&self.states) {
            acc = &acc + &s.matrix().scale_real(*p);
        }
        DensityMatrix::with_tolerance(acc, DEFAULT_TOL)
    }
}

/// `chi = S(sum p_i rho_i) - sum p_i S(rho_i)`, clamped at zero.
pub fn holevo_chi(ensemble: &Ensemble) -> Result<f64> {
    let mixed = von_neumann_entropy(&ensemble.average()?);
    let parts: f64 = ensemble
        .probabilities
        .iter()
        .zip(&ensemble.states)
        .map(|(p, s)| p * von_neumann_entropy(s))
        .sum();
    Ok((mixed - parts).max(0.0))
}

/// `|0>, |1>, ...` as density matrices.
pub fn computational_basis(dim: usize) -> Vec<DensityMatrix> {
    (0..dim)
        .map(|i| DensityMatrix::basis(dim, i).expect("index in range"))
        .collect()
}

/// Holevo quantity of the channel outputs for equiprobable orthogonal pure inputs.
pub fn classical_capacity_lower_bound(channel: &KrausSet, basis_states: &[DensityMatrix]) -> Result<f64> {
    if basis_states.is_empty() {
        return Err(Error::InvalidState("at least one input state is required".into()));
    }
    for s in basis_states {
        let purity = s.purity();
        if (purity - 1.0).abs() > PURITY_TOL {
            return Err(Error::InvalidState(format!("input state is not pure (purity {purity:.6})")));
        }
    }
    for (i, a) in basis_states.iter().enumerate() {
        for b in &basis_states[i + 1..] {
            let overlap = a.matrix().matmul(b.matrix())?.trace().norm();
            if overlap > ORTHOGONALITY_TOL {
                return Err(Error::NonOrthogonal { overlap });
            }
        }
    }
    let outputs = basis_states
        .iter()
        .map(|s| channel.apply(s))
        .collect::<Result<Vec<_>>>()?;
    holevo_chi(&Ensemble::uniform(outputs)?)
}
