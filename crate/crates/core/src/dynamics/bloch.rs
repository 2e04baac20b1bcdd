use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::channel::KrausSet;
use crate::error::{Error, Result};
use crate::numerics::{one, zero, ComplexMatrix};

/// Pauli matrices `[sx, sy, sz]`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let i = Complex64::i();
    [
        ComplexMatrix::new(2, 2, vec![zero(), one(), one(), zero()]).expect("2x2"),
        ComplexMatrix::new(2, 2, vec![zero(), -i, i, zero()]).expect("2x2"),
        ComplexMatrix::new(2, 2, vec![one(), zero(), zero(), -one()]).expect("2x2"),
    ]
}

/// `r_a = Re Tr(sigma_a X)` for a 2x2 operator.
pub fn bloch_vector(x: &ComplexMatrix) -> Result<Vector3<f64>> {
    if x.shape() != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "Bloch coordinates need a 2x2 operator, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let [sx, sy, sz] = pauli();
    Ok(Vector3::new(
        (&sx * x).trace().re,
        (&sy * x).trace().re,
        (&sz * x).trace().re,
    ))
}

/// `(1 + r . sigma) / 2`.
pub fn state_from_bloch(r: &Vector3<f64>) -> ComplexMatrix {
    let [sx, sy, sz] = pauli();
    let sum = &(&(&sx.scale_real(r.x) + &sy.scale_real(r.y)) + &sz.scale_real(r.z)) + &ComplexMatrix::identity(2);
    sum.scale_real(0.5)
}

/// Qubit channel in Bloch form `r -> M r + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineQubitMap {
    pub linear: Matrix3<f64>,
    pub shift: Vector3<f64>,
}

impl AffineQubitMap {
    pub fn apply(&self, r: &Vector3<f64>) -> Vector3<f64> {
        self.linear * r + self.shift
    }

    /// Singular values of `M`, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.linear.singular_values().iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }

    /// Unital channels fix the centre of the ball.
    pub fn is_unital(&self, tol: f64) -> bool {
        self.shift.amax() <= tol
    }
}

/// `M_{aj} = Tr(sigma_a Phi(sigma_j)) / 2`, `t_a = Tr(sigma_a Phi(1)) / 2`.
pub fn affine_of_channel(channel: &KrausSet) -> Result<AffineQubitMap> {
    if channel.n_in() != 2 || channel.n_out() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "qubit channel expected, got {} -> {}",
            channel.n_in(),
            channel.n_out()
        )));
    }
    let mut linear = Matrix3::zeros();
    for (j, s) in pauli().iter().enumerate() {
        let image = bloch_vector(&channel.apply_operator(s)?)? * 0.5;
        linear.set_column(j, &image);
    }
    let shift = bloch_vector(&channel.apply_operator(&ComplexMatrix::identity(2))?)? * 0.5;
    Ok(AffineQubitMap { linear, shift })
}

/// `n` points of a Fibonacci lattice on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden * i as f64).sin_cos();
            Vector3::new(rho * c, rho * s, z)
        })
        .collect()
}

/// Images of `n_points` Fibonacci-sampled pure states.
pub fn bloch_image(channel: &KrausSet, n_points: usize) -> Result<Vec<Vector3<f64>>> {
    if channel.n_in() != 2 || channel.n_out() != 2 {
        return Err(Error::DimensionMismatch("bloch_image needs a qubit channel".into()));
    }
    fibonacci_sphere(n_points)
        .iter()
        .map(|r| bloch_vector(&channel.apply_operator(&state_from_bloch(r))?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn pauli_round_trip() {
        let r = Vector3::new(0.1, -0.4, 0.3);
        assert!((bloch_vector(&state_from_bloch(&r)).unwrap() - r).norm() < 1e-15);
    }

    #[test]
    fn unitary_channel_is_rotation() {
        let h = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap().scale_real(0.5f64.sqrt());
        let m = affine_of_channel(&KrausSet::unitary(h)).unwrap();
        for s in m.singular_values() {
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert!(m.is_unital(1e-15));
    }

    #[test]
    fn dephasing_affine_form() {
        let m = affine_of_channel(&families::dephasing()).unwrap();
        assert!((m.linear - Matrix3::from_diagonal(&Vector3::new(0.0, 0.0, 1.0))).amax() < 1e-15);
        assert!(m.shift.amax() < 1e-15);
    }

    #[test]
    fn linear_channel_collapses_to_segment() {
        let m = affine_of_channel(&families::qubit_family_a(FRAC_PI_4, 0.0).unwrap()).unwrap();
        let sv = m.singular_values();
        assert!(sv[0] > 1e-10 && sv[1] <= 1e-10 && sv[2] <= 1e-10);
    }

    #[test]
    fn fibonacci_points_are_unit() {
        for n in [1, 2, 7, 500] {
            let pts = fibonacci_sphere(n);
            assert_eq!(pts.len(), n);
            assert!(pts.iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn image_examples() {
        let id = bloch_image(&KrausSet::identity(2), 64).unwrap();
        assert!(id.iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));

        let a0 = bloch_image(&families::qubit_family_a(0.0, 0.0).unwrap(), 500).unwrap();
        let centroid = a0.iter().fold(Vector3::zeros(), |acc, p| acc + p) / 500.0;
        assert!((centroid.z + 0.5).abs() < 1e-3);
    }
}
