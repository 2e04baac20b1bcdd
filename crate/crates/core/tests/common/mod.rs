//! Independent closed-form oracles and fixtures for the integration tests.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use qchannels_core::families;
use qchannels_core::{ComplexMatrix, KrausSet};

pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect()
}

/// The 100-point sweep over `[0, pi/2]`.
pub fn sweep_grid() -> Vec<f64> {
    grid(0.0, FRAC_PI_2, 100)
}

/// Both qubit families on 100 points of `[0, pi]` at two phases.
pub fn qubit_grid() -> Vec<(String, KrausSet)> {
    let mut out = Vec::new();
    for theta in grid(0.0, PI, 100) {
        for phi in [0.0, PI / 3.0] {
            out.push((format!("a({theta:.4},{phi:.4})"), families::qubit_family_a(theta, phi).unwrap()));
            out.push((format!("b({theta:.4},{phi:.4})"), families::qubit_family_b(theta, phi).unwrap()));
        }
    }
    out
}

/// `-p ln p - (1-p) ln(1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p].iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

/// Family a with `phi = 0` sends `|0> -> diag(sin^2, cos^2)` and `|1> -> 1/2`,
/// so every quantity on the computational basis is a binary entropy.
pub fn family_a_chi(theta: f64) -> f64 {
    let s2 = theta.sin().powi(2);
    let avg = 0.5 * (s2 + 0.5);
    binary_entropy(avg) - 0.5 * binary_entropy(s2) - 0.5 * 2f64.ln()
}

/// `S(Phi(1/2))` for family a at any phase.
pub fn family_a_output_entropy_at_center(theta: f64) -> f64 {
    binary_entropy(0.5 * (theta.sin().powi(2) + 0.5))
}

/// Wootters concurrence of an X-shaped two-qubit state
/// `2 max(0, |r03| - sqrt(r11 r22), |r12| - sqrt(r00 r33))`.
pub fn x_state_concurrence(r: &ComplexMatrix) -> f64 {
    let d = |i: usize| r[(i, i)].re.max(0.0);
    let a = r[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    let b = r[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    2.0 * a.max(b).max(0.0)
}

/// The piecewise concurrence formula transcribed as printed; `None` where a
/// square root argument is negative.
pub fn printed_concurrence(theta: f64) -> Option<f64> {
    if (theta - FRAC_PI_4).abs() < 1e-15 {
        return Some(0.0);
    }
    let c = (2.0 * theta).cos();
    let (x, y) = (4.0 * c - 1.0, 2.0 - c);
    if x < -1e-12 || y < -1e-12 {
        return None;
    }
    let (sx, sy) = (x.max(0.0).sqrt(), y.max(0.0).sqrt());
    Some(if theta < FRAC_PI_4 { 0.5 * (sx - sy) } else { 0.5 * (sy - sx) })
}

/// Printed global unitary for family a.
pub fn printed_unitary(theta: f64, phi: f64) -> ComplexMatrix {
    use qchannels_core::Complex64;
    let (s, c) = theta.sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let x = |v: f64| Complex64::new(v, 0.0);
    ComplexMatrix::from_rows(&[
        vec![x(s), z, z, -Complex64::from_polar(c, -phi)],
        vec![z, x(r), x(r), z],
        vec![z, x(r), x(-r), z],
        vec![Complex64::from_polar(c, phi), z, z, x(s)],
    ])
    .unwrap()
}
