//! Spin-½ phase space over the circle: the Stratonovich–Weyl kernel
//! `ŵ(θ) = ½ R(θ) diag(1+√a, 1-√a) R(θ)†` with `R(θ) = e^{iθσ_y/2}`, the
//! distribution `W(θ) = Tr(ρŵ(θ))`, and the raw reconstruction integral
//! `∫₀^{2π} W(θ) ŵ(θ) dθ`.
//!
//! The integral is returned unnormalized. For `a = 3` and diagonal `ρ` it
//! is `(π/2) diag(1+3r/2, 1-3r/2)`, which is not proportional to `ρ`. With
//! the rotated-`ρ₀` kernel it is `(π/2) I + (π/4) n·σ`, which is not `πρ₀`
//! either; [`ReconstructionReport`] exposes the best scalar and the defect.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su_matrix::Mat2C;

/// Structural tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-12;
/// `|Tr ρ² - 1|` below which a state is pure.
pub const PURITY_TOL: f64 = 1e-10;
pub const MIN_QUAD_POINTS: usize = 64;
pub const MIN_CIRCLE_SAMPLES: usize = 64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A validated qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix2 {
    m: Mat2C,
}

impl DensityMatrix2 {
    pub fn new(m: Mat2C) -> Result<Self> {
        if !m.is_finite() || !m.is_hermitian(DENSITY_TOL) {
            return Err(Error::NonHermitianDensity(format!("ρ - ρ† = {:e}", m.max_abs_diff(&m.dagger()))));
        }
        if (m.trace() - c(1.0)).norm() > DENSITY_TOL {
            return Err(Error::NonHermitianDensity(format!("Tr ρ = {}", m.trace())));
        }
        // eigenvalues of a unit-trace Hermitian 2×2 are ½ ± |n|/2
        if m.det().re < -DENSITY_TOL {
            return Err(Error::NonHermitianDensity(format!("negative eigenvalue, det ρ = {:e}", m.det().re)));
        }
        Ok(DensityMatrix2 { m })
    }

    /// `½(1 + n·σ)`, requiring `|n| ≤ 1`.
    pub fn from_bloch(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        let m = Mat2C::new(
            c(0.5 * (1.0 + nz)),
            Complex64::new(0.5 * nx, -0.5 * ny),
            Complex64::new(0.5 * nx, 0.5 * ny),
            c(0.5 * (1.0 - nz)),
        );
        DensityMatrix2::new(m)
    }

    /// `½(1 + rσ_z) = diag(r₁, r₂)`.
    pub fn mixed(r: f64) -> Result<Self> {
        DensityMatrix2::from_bloch(0.0, 0.0, r)
    }

    /// `½(1 + (σ_x + σ_z)/√2)`.
    pub fn pure_example() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix2::from_bloch(h, 0.0, h).expect("unit Bloch vector")
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix2::mixed(0.0).expect("identity/2")
    }

    pub fn matrix(&self) -> &Mat2C {
        &self.m
    }

    pub fn purity(&self) -> f64 {
        (self.m * self.m).trace().re
    }

    pub fn bloch(&self) -> [f64; 3] {
        [2.0 * self.m.a21.re, 2.0 * self.m.a21.im, (self.m.a11 - self.m.a22).re]
    }

    pub fn is_diagonal(&self) -> bool {
        self.m.a12.norm() <= DENSITY_TOL
    }
}

/// `e^{iθσ_y/2} = [[cos θ/2, sin θ/2], [-sin θ/2, cos θ/2]]`.
pub fn rotation_y(theta: f64) -> Mat2C {
    let (s, co) = (0.5 * theta).sin_cos();
    Mat2C::new(c(co), c(s), c(-s), c(co))
}

/// `½ [[√a cos θ + 1, -√a sin θ], [-√a sin θ, -√a cos θ + 1]]`.
///
/// `Tr ŵ = 1` and `Tr ŵ² = (a+1)/2`; `a = 3` gives the spin-½ value 2.
pub fn su2_wigner_kernel(theta: f64, a: f64) -> Result<Mat2C> {
    if !(a >= 0.0) || !theta.is_finite() {
        return Err(Error::InvalidInput(format!("kernel needs a ≥ 0 and finite θ, got a = {a}, θ = {theta}")));
    }
    let sa = a.sqrt();
    let (s, co) = theta.sin_cos();
    Ok(Mat2C::new(c(0.5 * (sa * co + 1.0)), c(-0.5 * sa * s), c(-0.5 * sa * s), c(0.5 * (1.0 - sa * co))))
}

/// `½ R(θ) diag(1+√a, 1-√a) R(θ)†`, the Euler form of [`su2_wigner_kernel`].
pub fn su2_wigner_kernel_euler(theta: f64, a: f64) -> Result<Mat2C> {
    if !(a >= 0.0) {
        return Err(Error::InvalidInput(format!("kernel needs a ≥ 0, got {a}")));
    }
    let r = rotation_y(theta);
    let d = Mat2C::diag(c(0.5 * (1.0 + a.sqrt())), c(0.5 * (1.0 - a.sqrt())));
    Ok(r * d * r.dagger())
}

/// `R(θ) ρ₀ R(θ)†`.
pub fn rotation_kernel(rho0: &DensityMatrix2, theta: f64) -> Mat2C {
    let r = rotation_y(theta);
    r * rho0.m * r.dagger()
}

/// The entrywise form of [`rotation_kernel`] for the example pure state.
pub fn rotation_kernel_displayed(theta: f64) -> Mat2C {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (s, co) = theta.sin_cos();
    Mat2C::new(
        c(0.5 * (1.0 + h * (s + co))),
        c(-0.5 * h * (s - co)),
        c(-0.5 * h * (s - co)),
        c(0.5 * (1.0 - h * (s + co))),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// [`su2_wigner_kernel`] at `a = 3`.
    StratonovichA3,
    /// [`rotation_kernel`] built from the state being reconstructed.
    RotationOfRho0,
}

impl Kernel {
    pub fn at(&self, rho: &DensityMatrix2, theta: f64) -> Mat2C {
        match self {
            Kernel::StratonovichA3 => su2_wigner_kernel(theta, 3.0).expect("a = 3"),
            Kernel::RotationOfRho0 => rotation_kernel(rho, theta),
        }
    }
}

/// Uniform samples of a periodic function on `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleFunction {
    pub samples: Vec<f64>,
}

impl CircleFunction {
    pub fn from_fn(count: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if count < MIN_CIRCLE_SAMPLES {
            return Err(Error::InvalidInput(format!("need ≥ {MIN_CIRCLE_SAMPLES} samples, got {count}")));
        }
        Ok(CircleFunction { samples: (0..count).map(|k| f(theta_k(k, count))).collect() })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn theta(&self, k: usize) -> f64 {
        theta_k(k, self.samples.len())
    }

    /// Trapezoid integral over the circle.
    pub fn integral(&self) -> f64 {
        self.samples.iter().sum::<f64>() * 2.0 * std::f64::consts::PI / self.samples.len() as f64
    }
}

fn theta_k(k: usize, n: usize) -> f64 {
    2.0 * std::f64::consts::PI * k as f64 / n as f64
}

pub const DEFAULT_CIRCLE_SAMPLES: usize = 256;

/// `W(θ) = Tr(ρ ŵ(θ))` with the `a`-kernel on [`DEFAULT_CIRCLE_SAMPLES`] points.
pub fn wigner_distribution(rho: &DensityMatrix2, a: f64) -> Result<CircleFunction> {
    su2_wigner_kernel(0.0, a)?;
    CircleFunction::from_fn(DEFAULT_CIRCLE_SAMPLES, |t| {
        (rho.m * su2_wigner_kernel(t, a).expect("validated")).trace().re
    })
}

/// `W(θ)` for either kernel.
pub fn wigner_distribution_with(rho: &DensityMatrix2, kernel: Kernel, count: usize) -> Result<CircleFunction> {
    CircleFunction::from_fn(count, |t| (rho.m * kernel.at(rho, t)).trace().re)
}

/// `(√3/2)(r₁ - r₂) cos θ + (r₁ + r₂)/2` for diagonal `ρ`.
pub fn diagonal_distribution_closed(rho: &DensityMatrix2, theta: f64) -> Result<f64> {
    if !rho.is_diagonal() {
        return Err(Error::InvalidInput("closed form covers diagonal ρ only".into()));
    }
    let (r1, r2) = (rho.m.a11.re, rho.m.a22.re);
    Ok(0.5 * 3f64.sqrt() * (r1 - r2) * theta.cos() + 0.5 * (r1 + r2))
}

/// `∫₀^{2π} W(θ) ŵ(θ) dθ` by the trapezoid rule; exact for these
/// trigonometric integrands once `quad_points ≥ 8`.
pub fn reconstruct(rho: &DensityMatrix2, kernel: Kernel, quad_points: usize) -> Result<Mat2C> {
    if quad_points < MIN_QUAD_POINTS {
        return Err(Error::InvalidInput(format!("need ≥ {MIN_QUAD_POINTS} quadrature points, got {quad_points}")));
    }
    let h = 2.0 * std::f64::consts::PI / quad_points as f64;
    let mut acc = Mat2C::zero();
    for k in 0..quad_points {
        let w = kernel.at(rho, theta_k(k, quad_points));
        acc = acc + w.scale((rho.m * w).trace() * h);
    }
    Ok(acc)
}

/// `(π/2) diag(1 + 3r/2, 1 - 3r/2)`.
pub fn mixed_reconstruction_closed(r: f64) -> Mat2C {
    let h = 0.5 * std::f64::consts::PI;
    Mat2C::diag(c(h * (1.0 + 1.5 * r)), c(h * (1.0 - 1.5 * r)))
}

/// The reconstruction compared with `Aρ` for the best scalar `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub integral: Mat2C,
    /// `Tr(Rρ)/Tr(ρ²)`, the Frobenius-optimal normalization.
    pub inferred_a: f64,
    /// `R - Aρ`.
    pub defect: Mat2C,
    /// `max |R - πρ|`.
    pub pi_defect: f64,
}

pub fn reconstruction_report(rho: &DensityMatrix2, kernel: Kernel, quad_points: usize) -> Result<ReconstructionReport> {
    let integral = reconstruct(rho, kernel, quad_points)?;
    let inferred_a = (integral * rho.m).trace().re / rho.purity();
    let defect = integral - rho.m.scale(c(inferred_a));
    let pi_defect = integral.max_abs_diff(&rho.m.scale(c(std::f64::consts::PI)));
    Ok(ReconstructionReport { integral, inferred_a, defect, pi_defect })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Purity {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PurityReport {
    pub trace: f64,
    pub purity: f64,
    pub classification: Purity,
}

pub fn purity_report(rho: &DensityMatrix2) -> PurityReport {
    let purity = rho.purity();
    let classification = if (purity - 1.0).abs() < PURITY_TOL { Purity::Pure } else { Purity::Mixed };
    PurityReport { trace: rho.m.trace().re, purity, classification }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn density_validation() {
        assert!(DensityMatrix2::from_bloch(0.3, 0.4, 0.5).is_ok());
        assert!(DensityMatrix2::from_bloch(1.0, 1.0, 0.0).is_err());
        let bad = Mat2C::new(c(0.5), c(0.1), c(0.0), c(0.5));
        assert!(matches!(DensityMatrix2::new(bad), Err(Error::NonHermitianDensity(_))));
        assert!(DensityMatrix2::new(Mat2C::identity()).is_err());
        let b = DensityMatrix2::from_bloch(0.3, -0.4, 0.5).unwrap().bloch();
        assert!((b[0] - 0.3).abs() < 1e-15 && (b[1] + 0.4).abs() < 1e-15 && (b[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kernel_forms_and_traces() {
        let half = Mat2C::identity().scale(c(0.5));
        assert!(su2_wigner_kernel(1.1, 0.0).unwrap().max_abs_diff(&half) < 1e-16);
        let k0 = su2_wigner_kernel(0.0, 3.0).unwrap();
        let s3 = 3f64.sqrt();
        assert!(k0.max_abs_diff(&Mat2C::diag(c(0.5 * (s3 + 1.0)), c(0.5 * (1.0 - s3)))) < 1e-16);
        assert!(su2_wigner_kernel(0.0, -1.0).is_err());
        for k in 0..64 {
            let t = theta_k(k, 64);
            for a in [0.0, 1.0, 3.0, 7.5] {
                let w = su2_wigner_kernel(t, a).unwrap();
                assert!(w.max_abs_diff(&su2_wigner_kernel_euler(t, a).unwrap()) < 1e-14);
                assert!((w.trace().re - 1.0).abs() < 1e-14);
                assert!(((w * w).trace().re - 0.5 * (a + 1.0)).abs() < 1e-14);
            }
            let rho0 = DensityMatrix2::pure_example();
            let w = rotation_kernel(&rho0, t);
            assert!(w.max_abs_diff(&rotation_kernel_displayed(t)) < 1e-14);
            assert!((w.trace().re - 1.0).abs() < 1e-14 && ((w * w).trace().re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn distributions() {
        let w = wigner_distribution(&DensityMatrix2::maximally_mixed(), 3.0).unwrap();
        assert!(w.samples.iter().all(|v| (v - 0.5).abs() < 1e-15));
        let rho = DensityMatrix2::new(Mat2C::diag(c(0.8), c(0.2))).unwrap();
        let w = wigner_distribution(&rho, 3.0).unwrap();
        for k in 0..w.len() {
            assert!((w.samples[k] - diagonal_distribution_closed(&rho, w.theta(k)).unwrap()).abs() < 1e-14);
        }
        assert!((w.integral() - PI).abs() < 1e-13);
        let p = DensityMatrix2::pure_example();
        let w = wigner_distribution_with(&p, Kernel::RotationOfRho0, 128).unwrap();
        for k in 0..w.len() {
            assert!((w.samples[k] - 0.5 * (w.theta(k).cos() + 1.0)).abs() < 1e-14);
        }
        assert!(wigner_distribution_with(&p, Kernel::RotationOfRho0, 16).is_err());
    }

    #[test]
    fn mixed_reconstruction() {
        for r in [0.0, 0.2, 0.5, -0.6] {
            let rho = DensityMatrix2::mixed(r).unwrap();
            let got = reconstruct(&rho, Kernel::StratonovichA3, 64).unwrap();
            assert!(got.max_abs_diff(&mixed_reconstruction_closed(r)) < 1e-12);
            let again = reconstruct(&rho, Kernel::StratonovichA3, 128).unwrap();
            assert!(got.max_abs_diff(&again) < 1e-13);
            // R - πρ = (π/4) r σ_z
            let defect = got - rho.matrix().scale(c(PI));
            assert!(defect.max_abs_diff(&Mat2C::sigma_z().scale(c(PI * r * 0.25))) < 1e-12);
        }
    }

    #[test]
    fn pure_reconstruction_is_not_pi_rho() {
        let rho = DensityMatrix2::pure_example();
        let rep = reconstruction_report(&rho, Kernel::RotationOfRho0, 64).unwrap();
        // (π/2) I + (π/4) n·σ with n = (1, 0, 1)/√2
        let n_sigma = rho.matrix().scale(c(2.0)) - Mat2C::identity();
        let expected = Mat2C::identity().scale(c(0.5 * PI)) + n_sigma.scale(c(0.25 * PI));
        assert!(rep.integral.max_abs_diff(&expected) < 1e-12);
        assert!((rep.inferred_a - 0.75 * PI).abs() < 1e-12);
        assert!(rep.pi_defect > 0.5);
    }

    #[test]
    fn purity() {
        let r = purity_report(&DensityMatrix2::maximally_mixed());
        assert_eq!(r.classification, Purity::Mixed);
        assert!((r.purity - 0.5).abs() < 1e-15);
        let r = purity_report(&DensityMatrix2::pure_example());
        assert_eq!(r.classification, Purity::Pure);
        assert!((r.trace - 1.0).abs() < 1e-15);
        let rho = DensityMatrix2::pure_example();
        assert!((*rho.matrix() * *rho.matrix()).max_abs_diff(rho.matrix()) < 1e-15);
        let r = purity_report(&DensityMatrix2::new(Mat2C::diag(c(0.8), c(0.2))).unwrap());
        assert!((r.purity - 0.68).abs() < 1e-15 && r.classification == Purity::Mixed);
    }
}
