//! Parameterized selfcomplementary channel families and named special cases.
//!
//! The qubit families are exact channels for every parameter value. The qutrit
//! and N-level constructors reproduce their published recipes term by term and
//! attach a [`ValidationReport`] instead of asserting validity, because outside
//! `theta = 0` those recipes are not complete in general.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::channel::{KrausSet, ValidationReport};
use crate::error::{Error, Result};
use crate::numerics::{re, zero, ComplexMatrix, DEFAULT_TOL};

const RANGE_SLACK: f64 = 1e-12;

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if !value.is_finite() || value < lo - RANGE_SLACK || value > hi + RANGE_SLACK {
        return Err(Error::OutOfRange { name, value, range });
    }
    Ok(())
}

fn check_angles(theta: f64, phi: f64) -> Result<()> {
    check_range("theta", theta, 0.0, PI, "[0, pi]")?;
    check_range("phi", phi, 0.0, 2.0 * PI, "[0, 2 pi]")
}

fn check_unitary(w: &ComplexMatrix, n: usize) -> Result<()> {
    if w.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "W must be {n}x{n}, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    let residual = w.unitarity_deviation();
    if residual > DEFAULT_TOL {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// `K1 = diag(sin t, 1/sqrt2)`, `K2 = [[0, 1/sqrt2], [cos t e^{i phi}, 0]]`.
pub fn qubit_family_a(theta: f64, phi: f64) -> Result<KrausSet> {
    check_angles(theta, phi)?;
    let (s, c) = theta.sin_cos();
    let r = FRAC_1_SQRT_2;
    KrausSet::new(vec![
        ComplexMatrix::diag_real(&[s, r]),
        ComplexMatrix::new(2, 2, vec![zero(), re(r), Complex64::from_polar(c, phi), zero()])?,
    ])
}

/// `K1 = diag(1, sin t / sqrt2)`, `K2 = [[0, sin t / sqrt2], [0, cos t e^{i phi}]]`.
pub fn qubit_family_b(theta: f64, phi: f64) -> Result<KrausSet> {
    check_angles(theta, phi)?;
    let (s, c) = theta.sin_cos();
    let h = s * FRAC_1_SQRT_2;
    KrausSet::new(vec![
        ComplexMatrix::diag_real(&[1.0, h]),
        ComplexMatrix::new(2, 2, vec![zero(), re(h), zero(), Complex64::from_polar(c, phi)])?,
    ])
}

/// Decay to `|0>` with probability `p`.
pub fn amplitude_damping(p: f64) -> Result<KrausSet> {
    check_range("p", p, 0.0, 1.0, "[0, 1]")?;
    let p = p.clamp(0.0, 1.0);
    KrausSet::new(vec![
        ComplexMatrix::diag_real(&[1.0, (1.0 - p).sqrt()]),
        ComplexMatrix::from_real(2, 2, &[0.0, p.sqrt(), 0.0, 0.0])?,
    ])
}

/// Removes all coherences in the computational basis.
pub fn dephasing() -> KrausSet {
    KrausSet::new(vec![
        ComplexMatrix::diag_real(&[1.0, 0.0]),
        ComplexMatrix::diag_real(&[0.0, 1.0]),
    ])
    .expect("fixed shapes")
}

/// Qubit depolarizing channel `rho -> (1-p) rho + p 1/2`; `p = 1` is completely depolarizing.
pub fn depolarizing(p: f64) -> Result<KrausSet> {
    check_range("p", p, 0.0, 1.0, "[0, 1]")?;
    let i = Complex64::i();
    let a = (1.0 - 0.75 * p).max(0.0).sqrt();
    let b = (p / 4.0).sqrt();
    KrausSet::new(vec![
        ComplexMatrix::identity(2).scale_real(a),
        ComplexMatrix::from_real(2, 2, &[0.0, b, b, 0.0])?,
        ComplexMatrix::new(2, 2, vec![zero(), -i * b, i * b, zero()])?,
        ComplexMatrix::from_real(2, 2, &[b, 0.0, 0.0, -b])?,
    ])
}

/// A constructed channel together with its structural report.
#[derive(Debug, Clone)]
pub struct GeneratedChannel {
    pub channel: KrausSet,
    pub report: ValidationReport,
}

impl GeneratedChannel {
    fn new(channel: KrausSet) -> Result<Self> {
        let report = ValidationReport::of(&channel, DEFAULT_TOL)?;
        Ok(Self { channel, report })
    }
}

/// Three-level family built from `theta` and a 3x3 unitary `w`, entry for entry
/// as published (including the repeated `W22, W12, W23` rows).
pub fn qutrit_family(theta: f64, w: &ComplexMatrix) -> Result<GeneratedChannel> {
    check_range("theta", theta, 0.0, PI, "[0, pi]")?;
    check_unitary(w, 3)?;
    let (s, c) = theta.sin_cos();
    let r = FRAC_1_SQRT_2;
    // one-based access into W
    let wm = |i: usize, j: usize| w[(i - 1, j - 1)];
    let shared = [wm(2, 2) * r * s, wm(1, 2) * r * s, wm(2, 3) * r * s];

    let k1 = ComplexMatrix::diag_real(&[c, r * c, r * c]);
    let k2 = ComplexMatrix::from_rows(&[
        vec![zero(), re(r * c), zero()],
        vec![wm(1, 1) * s, wm(2, 1) * s, wm(3, 1) * s],
        shared.to_vec(),
    ])?;
    let k3 = ComplexMatrix::from_rows(&[
        vec![zero(), zero(), re(r * c)],
        shared.to_vec(),
        vec![wm(1, 3) * s, wm(2, 3) * s, wm(3, 3) * s],
    ])?;
    GeneratedChannel::new(KrausSet::new(vec![k1, k2, k3])?)
}

/// Cyclic shift `e_j -> e_{(j + 1) mod n}`, raised to `power` (negative allowed).
pub fn cyclic_permutation(n: usize, power: i64) -> ComplexMatrix {
    let shift = power.rem_euclid(n as i64) as usize;
    ComplexMatrix::from_fn(n, n, |r, c| if r == (c + shift) % n { re(1.0) } else { zero() })
}

/// N-level family from `theta` and an `n x n` unitary `w`.
///
/// `K_0 = diag(cos t, cos t / sqrt2, ...)`. For `i = 1..n`, `K_i` has first row
/// `P^i (cos t / sqrt2) e_0` and body rows `b = 1..n` equal to
/// `sin t * col(P^{-i} W, b - 1)^T`, scaled by `1/sqrt(n-2)` except the last
/// body row which uses `1/sqrt(n-1)`.
pub fn ndim_family(n: usize, theta: f64, w: &ComplexMatrix) -> Result<GeneratedChannel> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "n >= 2",
        });
    }
    check_range("theta", theta, 0.0, PI, "[0, pi]")?;
    check_unitary(w, n)?;
    let (s, c) = theta.sin_cos();
    let r = FRAC_1_SQRT_2;

    let mut diag = vec![r * c; n];
    diag[0] = c;
    let mut ops = vec![ComplexMatrix::diag_real(&diag)];
    for i in 1..n {
        let shifted = &cyclic_permutation(n, -(i as i64)) * w;
        let mut k = ComplexMatrix::zeros(n, n);
        k[(0, i % n)] = re(r * c);
        for b in 1..n {
            let scale = if b == n - 1 {
                1.0 / ((n - 1) as f64).sqrt()
            } else {
                1.0 / ((n - 2) as f64).sqrt()
            };
            for col in 0..n {
                k[(b, col)] = shifted[(col, b - 1)] * (scale * s);
            }
        }
        ops.push(k);
    }
    GeneratedChannel::new(KrausSet::new(ops)?)
}

/// `theta = 0` member of the N-level family:
/// `K_0 = diag(1, 1/sqrt2, ..., 1/sqrt2)` and `K_i = E_{0i} / sqrt2`.
pub fn ndim_theta0(n: usize) -> Result<KrausSet> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "n >= 2",
        });
    }
    let r = FRAC_1_SQRT_2;
    let mut diag = vec![r; n];
    diag[0] = 1.0;
    let mut ops = vec![ComplexMatrix::diag_real(&diag)];
    for i in 1..n {
        let mut k = ComplexMatrix::zeros(n, n);
        k[(0, i)] = re(r);
        ops.push(k);
    }
    KrausSet::new(ops)
}

/// Unitary DFT matrix `F_{jk} = e^{2 pi i jk / n} / sqrt(n)`.
pub fn fourier(n: usize) -> ComplexMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, n, |j, k| {
        Complex64::from_polar(scale, 2.0 * PI * ((j * k) % n) as f64 / n as f64)
    })
}

/// Family identifiers accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    QubitA,
    QubitB,
    AmplitudeDamping,
    Qutrit,
    Ndim,
    NdimTheta0,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::QubitA,
        Family::QubitB,
        Family::AmplitudeDamping,
        Family::Qutrit,
        Family::Ndim,
        Family::NdimTheta0,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::QubitA => "qubit-a",
            Family::QubitB => "qubit-b",
            Family::AmplitudeDamping => "ad",
            Family::Qutrit => "qutrit",
            Family::Ndim => "ndim",
            Family::NdimTheta0 => "ndim-theta0",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.id() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Parameters shared by the family constructors.
#[derive(Debug, Clone)]
pub struct FamilyParams {
    pub theta: f64,
    pub phi: f64,
    /// Unitary parameter for the qutrit and N-level families; identity when absent.
    pub w: Option<ComplexMatrix>,
    pub dim: usize,
    /// Decay probability for amplitude damping.
    pub p: f64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
            w: None,
            dim: 2,
            p: 0.5,
        }
    }
}

impl FamilyParams {
    fn w_or_identity(&self, n: usize) -> ComplexMatrix {
        self.w.clone().unwrap_or_else(|| ComplexMatrix::identity(n))
    }
}

/// Builds a family member and its validation report.
pub fn build(family: Family, params: &FamilyParams) -> Result<GeneratedChannel> {
    match family {
        Family::QubitA => GeneratedChannel::new(qubit_family_a(params.theta, params.phi)?),
        Family::QubitB => GeneratedChannel::new(qubit_family_b(params.theta, params.phi)?),
        Family::AmplitudeDamping => GeneratedChannel::new(amplitude_damping(params.p)?),
        Family::Qutrit => qutrit_family(params.theta, &params.w_or_identity(3)),
        Family::Ndim => ndim_family(params.dim, params.theta, &params.w_or_identity(params.dim)),
        Family::NdimTheta0 => GeneratedChannel::new(ndim_theta0(params.dim)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn ops(ch: &KrausSet) -> &[ComplexMatrix] {
        ch.operators()
    }

    #[test]
    fn family_a_examples() {
        let r = FRAC_1_SQRT_2;
        let ch = qubit_family_a(FRAC_PI_2, 0.0).unwrap();
        assert!(ops(&ch)[0].approx_eq(&ComplexMatrix::diag_real(&[1.0, r]), 1e-15));
        assert!(ops(&ch)[1].approx_eq(&ComplexMatrix::from_real(2, 2, &[0.0, r, 0.0, 0.0]).unwrap(), 1e-15));
        assert!(ch.to_superoperator().matrix().approx_eq(
            amplitude_damping(0.5).unwrap().to_superoperator().matrix(),
            1e-15
        ));

        let ch = qubit_family_a(0.0, 0.0).unwrap();
        assert!(ops(&ch)[0].approx_eq(&ComplexMatrix::diag_real(&[0.0, r]), 0.0));
        assert!(ops(&ch)[1].approx_eq(&ComplexMatrix::from_real(2, 2, &[0.0, r, 1.0, 0.0]).unwrap(), 0.0));
    }

    #[test]
    fn family_b_examples() {
        let ch = qubit_family_b(0.0, 0.0).unwrap();
        assert_eq!(ch, dephasing());

        let ch = qubit_family_b(FRAC_PI_2, 0.0).unwrap();
        assert!(ch
            .to_superoperator()
            .matrix()
            .approx_eq(ndim_theta0(2).unwrap().to_superoperator().matrix(), 1e-15));
        for (a, b) in ops(&ch).iter().zip(ops(&ndim_theta0(2).unwrap())) {
            assert!(a.approx_eq(b, 1e-15));
        }
        assert!(qubit_family_b(1.3, 4.0).unwrap().is_selfcomplementary(1e-15));
    }

    #[test]
    fn angle_ranges_are_enforced() {
        assert!(matches!(qubit_family_a(9.0, 0.0), Err(Error::OutOfRange { name: "theta", .. })));
        assert!(matches!(qubit_family_b(1.0, -0.5), Err(Error::OutOfRange { name: "phi", .. })));
        assert!(qubit_family_a(PI, 2.0 * PI).is_ok());
        assert!(qubit_family_a(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn amplitude_damping_examples() {
        let ch = amplitude_damping(0.0).unwrap();
        assert_eq!(ops(&ch)[0], ComplexMatrix::identity(2));
        assert_eq!(ops(&ch)[1], ComplexMatrix::zeros(2, 2));

        let ch = amplitude_damping(1.0).unwrap();
        let x = ComplexMatrix::from_real(2, 2, &[0.3, 0.2, 0.2, 0.7]).unwrap();
        let out = ch.apply_operator(&x).unwrap();
        assert!(out.approx_eq(&ComplexMatrix::diag_real(&[1.0, 0.0]), 1e-15));

        assert!(amplitude_damping(1.5).is_err());
    }

    #[test]
    fn qutrit_examples() {
        let theta0 = ndim_theta0(3).unwrap();
        for w in [ComplexMatrix::identity(3), fourier(3)] {
            let g = qutrit_family(0.0, &w).unwrap();
            for (a, b) in ops(&g.channel).iter().zip(ops(&theta0)) {
                assert!(a.approx_eq(b, 1e-15));
            }
        }
        let g = qutrit_family(0.0, &ComplexMatrix::identity(3)).unwrap();
        assert!(g.report.cptp && g.report.cptp_residual <= 1e-12);

        // printed recipe is not complete away from theta = 0
        let g = qutrit_family(PI / 4.0, &ComplexMatrix::identity(3)).unwrap();
        assert!(!g.report.cptp);
        assert!((g.report.cptp_residual - 0.5).abs() < 1e-12);

        assert!(qutrit_family(0.1, &ComplexMatrix::diag_real(&[1.0, 2.0, 1.0])).is_err());
    }

    #[test]
    fn ndim_examples() {
        for n in 2..=6 {
            for w in [ComplexMatrix::identity(n), fourier(n)] {
                let g = ndim_family(n, 0.0, &w).unwrap();
                let expected = ndim_theta0(n).unwrap();
                for (a, b) in ops(&g.channel).iter().zip(ops(&expected)) {
                    assert!(a.approx_eq(b, 1e-15), "n = {n}");
                }
            }
        }
        let g = ndim_family(2, 0.7, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!((g.channel.n_in(), g.channel.n_out(), g.channel.len()), (2, 2, 2));

        let a = ndim_family(3, 0.0, &ComplexMatrix::identity(3)).unwrap();
        let b = qutrit_family(0.0, &ComplexMatrix::identity(3)).unwrap();
        assert_eq!(a.channel, b.channel);
    }

    #[test]
    fn ndim_theta0_examples() {
        let two = ndim_theta0(2).unwrap();
        let ad = amplitude_damping(0.5).unwrap();
        for (a, b) in ops(&two).iter().zip(ops(&ad)) {
            assert!(a.approx_eq(b, 1e-15));
        }
        let three = ndim_theta0(3).unwrap();
        assert!(three.completeness().approx_eq(&ComplexMatrix::identity(3), 1e-15));
        for n in 2..=6 {
            let ch = ndim_theta0(n).unwrap();
            assert_eq!(ch.to_choi().rank(DEFAULT_TOL).unwrap(), n);
            assert!(ch.is_selfcomplementary(0.0));
        }
        assert!(ndim_theta0(1).is_err());
    }

    #[test]
    fn fourier_and_permutation_are_unitary() {
        for n in 1..=6 {
            assert!(fourier(n).unitarity_deviation() < 1e-14);
            let p = cyclic_permutation(n, 1);
            assert!(p.unitarity_deviation() == 0.0);
            assert_eq!(&p * &cyclic_permutation(n, -1), ComplexMatrix::identity(n));
        }
        // e_0 -> e_1
        assert_eq!(cyclic_permutation(3, 1)[(1, 0)], re(1.0));
    }

    #[test]
    fn family_ids_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.id().parse::<Family>().unwrap(), fam);
        }
        assert!("depolarizing".parse::<Family>().is_err());
    }
}
