//! Bloch-ball geometry of qubit channels and entanglement-based non-Markovianity
//! along `theta = omega t` trajectories.

mod bloch;
mod trajectory;

pub use bloch::{
    affine_of_channel, bloch_image, bloch_vector, fibonacci_sphere, pauli, state_from_bloch, AffineQubitMap,
};
pub use trajectory::{
    increase_duration, non_markovianity_measure, record_at, run_trajectory, time_grid, EntanglementMeasure,
    Trajectory, TrajectoryFamily, TrajectoryRecord,
};
