use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::channel::KrausSet;
use crate::error::{Error, Result};
use crate::numerics::{
    general_eigenvalues, hermitian_eigenvalues, kron, partial_transpose, sanitize_nonnegative_spectrum, zero,
    ComplexMatrix, DensityMatrix, SPECTRUM_CLIP,
};

/// Radicands this close to zero are clipped before the square root.
const RADICAND_CLIP: f64 = 1e-12;
const PURITY_TOL: f64 = 1e-10;
const RANGE_SLACK: f64 = 1e-12;

fn sigma_y_pair() -> ComplexMatrix {
    let i = Complex64::i();
    let sy = ComplexMatrix::new(2, 2, vec![zero(), -i, i, zero()]).expect("2x2");
    kron(&sy, &sy)
}

fn require_two_qubit(omega: &DensityMatrix) -> Result<()> {
    if omega.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit state expected, got dimension {}",
            omega.dim()
        )));
    }
    Ok(())
}

/// `(sy (x) sy) omega* (sy (x) sy)`.
pub fn spin_flip(omega: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubit(omega)?;
    let yy = sigma_y_pair();
    Ok(&(&yy * &omega.matrix().conj()) * &yy)
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)` where `l_i` are the square
/// roots of the spectrum of `omega * spin_flip(omega)` in descending order.
pub fn concurrence(omega: &DensityMatrix) -> Result<f64> {
    let flipped = spin_flip(omega)?;
    let r = omega.matrix().matmul(&flipped)?;
    let spectrum = general_eigenvalues(&r)?;
    let mut l: Vec<f64> = sanitize_nonnegative_spectrum(&spectrum, SPECTRUM_CLIP, r.norm())?
        .into_iter()
        .map(f64::sqrt)
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

fn clipped_sqrt(argument: &'static str, value: f64, radicand: f64) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -RADICAND_CLIP {
        Ok(0.0)
    } else {
        Err(Error::ClosedFormUndefined {
            argument,
            value,
            reason: format!("negative radicand {radicand:.6}"),
        })
    }
}

/// Three-branch concurrence formula for the `phi = 0` qubit family, as printed.
///
/// Both branches contain `sqrt(4 cos 2t - 1)`, which is imaginary once
/// `cos 2t < 1/4`; those arguments give [`Error::ClosedFormUndefined`].
pub fn concurrence_closed_form(theta: f64) -> Result<f64> {
    if !theta.is_finite() || !(-RANGE_SLACK..=FRAC_PI_2 + RANGE_SLACK).contains(&theta) {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            range: "[0, pi/2]",
        });
    }
    let theta = theta.clamp(0.0, FRAC_PI_2);
    if theta == FRAC_PI_4 {
        return Ok(0.0);
    }
    let c = (2.0 * theta).cos();
    let a = clipped_sqrt("theta", theta, 4.0 * c - 1.0)?;
    let b = clipped_sqrt("theta", theta, 2.0 - c)?;
    Ok(if theta < FRAC_PI_4 { 0.5 * (a - b) } else { 0.5 * (b - a) })
}

/// Partial-transpose negativity `(||omega^{T_A}||_1 - 1) / 2`, clamped at zero.
pub fn negativity(omega: &DensityMatrix, dims: (usize, usize)) -> Result<f64> {
    let pt = partial_transpose(omega.matrix(), dims)?;
    let trace_norm: f64 = hermitian_eigenvalues(&pt)?.iter().map(|v| v.abs()).sum();
    Ok(((trace_norm - 1.0) / 2.0).max(0.0))
}

/// `|cos 2t| / 4`.
pub fn negativity_closed_form(theta: f64) -> f64 {
    (2.0 * theta).cos().abs() / 4.0
}

/// Branch selector for [`concurrence_from_negativity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `t in [0, pi/4)`.
    Lower,
    /// `t = pi/4`.
    Point,
    /// `t in (pi/4, pi/2]`.
    Upper,
}

/// Concurrence written as a function of the negativity, as printed.
pub fn concurrence_from_negativity(neg: f64, branch: Branch) -> Result<f64> {
    if !neg.is_finite() || !(0.0..=0.25).contains(&neg) {
        return Err(Error::OutOfRange {
            name: "negativity",
            value: neg,
            range: "[0, 1/4]",
        });
    }
    if branch == Branch::Point {
        return Ok(0.0);
    }
    let a = clipped_sqrt("negativity", neg, 16.0 * neg - 1.0)?;
    let b = clipped_sqrt("negativity", neg, 2.0 - 4.0 * neg)?;
    Ok(match branch {
        Branch::Lower => 0.5 * (a - b),
        _ => 0.5 * (b - a),
    })
}

/// Normalized Choi state of a channel.
pub fn choi_state(channel: &KrausSet) -> Result<DensityMatrix> {
    channel.to_choi().normalized_state()
}

/// Returns `(C(rho_in) C(omega_Phi), C((1 (x) Phi)(rho_in)))` for a pure two-qubit input.
pub fn entanglement_evolution_factor(channel: &KrausSet, rho_in: &DensityMatrix) -> Result<(f64, f64)> {
    if channel.n_in() != 2 || channel.n_out() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "single-qubit channel expected, got {} -> {}",
            channel.n_in(),
            channel.n_out()
        )));
    }
    require_two_qubit(rho_in)?;
    let purity = rho_in.purity();
    if (purity - 1.0).abs() > PURITY_TOL {
        return Err(Error::InvalidState(format!("input must be pure (purity {purity:.6})")));
    }
    let predicted = concurrence(rho_in)? * concurrence(&choi_state(channel)?)?;
    let out = channel.extend_left(2).apply(rho_in)?;
    Ok((predicted, concurrence(&out)?))
}
