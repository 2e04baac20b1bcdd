use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::channel::KrausSet;
use crate::error::{Error, Result};
use crate::families;
use crate::measures::{choi_state, coherent_information, concurrence, map_entropy, negativity};
use crate::numerics::DensityMatrix;

/// Increments at or below this are treated as flat.
const INCREASE_TOL: f64 = 1e-12;

/// Channel schedule followed along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectoryFamily {
    /// Family a at `theta = omega t mod pi`.
    QubitA { phi: f64 },
    /// Family b at `theta = omega t mod pi`.
    QubitB { phi: f64 },
    /// Amplitude damping with `p = 1 - exp(-omega t)`.
    AmplitudeDamping,
}

impl TrajectoryFamily {
    /// Parameter reported in the `theta` column and the channel at time `t`.
    pub fn channel_at(&self, omega: f64, t: f64) -> Result<(f64, KrausSet)> {
        let phase = omega * t;
        match *self {
            TrajectoryFamily::QubitA { phi } => {
                let theta = phase.rem_euclid(PI);
                Ok((theta, families::qubit_family_a(theta, phi)?))
            }
            TrajectoryFamily::QubitB { phi } => {
                let theta = phase.rem_euclid(PI);
                Ok((theta, families::qubit_family_b(theta, phi)?))
            }
            TrajectoryFamily::AmplitudeDamping => {
                Ok((phase, families::amplitude_damping(1.0 - (-phase).exp())?))
            }
        }
    }
}

/// Measures at one time step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub t: f64,
    pub theta: f64,
    pub negativity: f64,
    pub concurrence: f64,
    pub map_entropy: f64,
    /// Coherent information at the maximally mixed input.
    pub coherent_information: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub omega: f64,
    pub records: Vec<TrajectoryRecord>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.t).collect()
    }

    fn series(&self, measure: EntanglementMeasure) -> Vec<f64> {
        self.records
            .iter()
            .map(|r| match measure {
                EntanglementMeasure::Negativity => r.negativity,
                EntanglementMeasure::Concurrence => r.concurrence,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementMeasure {
    Negativity,
    Concurrence,
}

/// Evaluates one time step.
pub fn record_at(family: TrajectoryFamily, omega: f64, t: f64) -> Result<TrajectoryRecord> {
    let (theta, channel) = family.channel_at(omega, t)?;
    let omega_state = choi_state(&channel)?;
    Ok(TrajectoryRecord {
        t,
        theta,
        negativity: negativity(&omega_state, (2, 2))?,
        concurrence: concurrence(&omega_state)?,
        map_entropy: map_entropy(&channel)?,
        coherent_information: coherent_information(&channel, &DensityMatrix::maximally_mixed(2))?,
    })
}

/// Uniform grid of `n_steps` intervals on `[0, t_max]`, so `n_steps + 1`
/// records including both endpoints.
pub fn time_grid(t_max: f64, n_steps: usize) -> Result<Vec<f64>> {
    if n_steps == 0 {
        return Err(Error::OutOfRange {
            name: "n_steps",
            value: 0.0,
            range: ">= 1",
        });
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::OutOfRange {
            name: "t_max",
            value: t_max,
            range: "> 0",
        });
    }
    Ok((0..=n_steps)
        .map(|i| if i == n_steps { t_max } else { t_max * i as f64 / n_steps as f64 })
        .collect())
}

pub fn run_trajectory(family: TrajectoryFamily, omega: f64, t_max: f64, n_steps: usize) -> Result<Trajectory> {
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::OutOfRange {
            name: "omega",
            value: omega,
            range: ">= 0",
        });
    }
    let records = time_grid(t_max, n_steps)?
        .into_iter()
        .map(|t| record_at(family, omega, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { omega, records })
}

/// Accumulated positive variation `sum max(E(t_{i+1}) - E(t_i), 0)`.
pub fn non_markovianity_measure(traj: &Trajectory, measure: EntanglementMeasure) -> f64 {
    traj.series(measure)
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|d| *d > INCREASE_TOL)
        .fold(0.0, |acc, d| acc + d)
}

/// Total time over which the chosen measure increases.
pub fn increase_duration(traj: &Trajectory, measure: EntanglementMeasure) -> f64 {
    let values = traj.series(measure);
    traj.records
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[1] - v[0] > INCREASE_TOL)
        .map(|(r, _)| r[1].t - r[0].t)
        .fold(0.0, |acc, d| acc + d)
}
