//! Channel representations and conversions.
//!
//! * [`KrausSet`]: `rho -> sum_i K_i rho K_i^dagger`.
//! * [`SuperOperator`]: `sum_i K_i (x) conj(K_i)` on row-major `vec(rho)`.
//! * [`ChoiMatrix`]: realignment of the superoperator, output (x) input.
//! * [`StinespringUnitary`]: joint unitary on environment (x) system.

mod choi;
mod kraus;
mod stinespring;

use serde::{Deserialize, Serialize};

pub use choi::{channel_rank, reshuffle, unreshuffle, ChoiMatrix, SuperOperator, RANK_TOL};
pub use kraus::{compose, tensor_channel, CptpReport, KrausSet};
pub use stinespring::{kraus_from_unitary, StinespringUnitary};

use crate::error::Result;

/// Structural summary of a Kraus set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub cptp_residual: f64,
    pub cptp: bool,
    pub selfcomplementary: bool,
    pub choi_rank: usize,
}

impl ValidationReport {
    pub fn of(channel: &KrausSet, tol: f64) -> Result<Self> {
        let cptp = channel.check_cptp(tol);
        Ok(Self {
            cptp_residual: cptp.max_residual,
            cptp: cptp.passed,
            selfcomplementary: channel.is_selfcomplementary(tol),
            choi_rank: channel.to_choi().rank(tol)?,
        })
    }
}
