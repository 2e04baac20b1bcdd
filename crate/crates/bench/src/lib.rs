//! Fixtures shared by the criterion benches.

use qchannels_core::families;
use qchannels_core::KrausSet;

/// `n` uniform points on `[lo, hi]`, endpoints included.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n.max(2) - 1) as f64 })
        .collect()
}

/// Family-a members on the sweep grid over `[0, pi/2]`.
pub fn family_a_grid(n: usize) -> Vec<KrausSet> {
    grid(0.0, std::f64::consts::FRAC_PI_2, n)
        .into_iter()
        .map(|t| families::qubit_family_a(t, 0.0).expect("theta in range"))
        .collect()
}
