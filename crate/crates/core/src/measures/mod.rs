//! Entropies, capacity quantities and entanglement monotones. Entropies are in nats.

mod entanglement;
mod entropy;

pub use entanglement::{
    choi_state, concurrence, concurrence_closed_form, concurrence_from_negativity, entanglement_evolution_factor,
    negativity, negativity_closed_form, spin_flip, Branch,
};
pub use entropy::{
    classical_capacity_lower_bound, coherent_information, computational_basis, holevo_chi, map_entropy,
    shannon_entropy, von_neumann_entropy, Ensemble, ENTROPY_ZERO,
};

/// Converts nats to bits.
pub fn nats_to_bits(x: f64) -> f64 {
    x / std::f64::consts::LN_2
}
