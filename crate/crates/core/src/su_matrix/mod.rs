//! Two-dimensional realization of the SU(1,1) algebra.
//!
//! The generators are `k₀ = σ_z`, `k₊ = iσ₊`, `k₋ = iσ₋`. Every exponential
//! here is closed form because the exponents square to multiples of the
//! identity.
//!
//! The characteristic-function operator is `ŵ = exp(iΦU)` with
//! `U = k₀ cosh τ + e^{iχ} sinh τ k₊ + e^{-iχ} sinh τ k₋`, which equals the
//! group element `S(τ,χ) e^{iΦk₀} S(τ,χ)⁻¹`. The matrix commonly written for
//! `U` with `-i e^{±iχ} sinh τ` off the diagonal is this `U` at `-τ`; it is
//! kept as [`u_displayed`].

mod mat2;

pub use mat2::{Mat2C, CH_SERIES_THRESHOLD};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `|r|` at which `cosh r` factors are refused.
pub const LDU_GUARD: f64 = 10.0;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const Z: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// Group parameters. Angles are stored as given and compared modulo 2π.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GroupParams {
    pub r: f64,
    pub theta: f64,
    pub tau: f64,
    pub chi: f64,
    pub phi: f64,
}

impl GroupParams {
    /// Parameters of `ŵ(ζ)` or `T(g)`: phase `Φ`, squeeze `τ`, angle `χ`.
    pub fn character(phi: f64, tau: f64, chi: f64) -> Self {
        GroupParams { phi, tau, chi, ..Default::default() }
    }

    /// Distance with angles reduced modulo 2π.
    pub fn angular_distance(&self, other: &GroupParams) -> f64 {
        let ang = |a: f64, b: f64| {
            let d = (a - b).rem_euclid(2.0 * std::f64::consts::PI);
            d.min(2.0 * std::f64::consts::PI - d)
        };
        [
            (self.r - other.r).abs(),
            ang(self.theta, other.theta),
            (self.tau - other.tau).abs(),
            ang(self.chi, other.chi),
            ang(self.phi, other.phi),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `(k₀, k₊, k₋)`.
pub fn k_generators() -> (Mat2C, Mat2C, Mat2C) {
    (Mat2C::sigma_z(), Mat2C::new(Z, I, Z, Z), Mat2C::new(Z, Z, I, Z))
}

/// Compact displacement `[[cos r, e^{-iθ} sin r], [-e^{iθ} sin r, cos r]]`.
pub fn displacement_mat(r: f64, theta: f64) -> Mat2C {
    let (s, co) = r.sin_cos();
    Mat2C::new(c(co), cis(-theta) * s, -cis(theta) * s, c(co))
}

/// Pseudounitary squeeze `[[cosh τ/2, -i e^{iχ} sinh τ/2], [i e^{-iχ} sinh τ/2, cosh τ/2]]`,
/// equal to `exp(½(ξ* k₋ - ξ k₊))` with `ξ = τ e^{iχ}`.
pub fn squeeze_mat(tau: f64, chi: f64) -> Mat2C {
    let (ch, sh) = ((0.5 * tau).cosh(), (0.5 * tau).sinh());
    Mat2C::new(c(ch), -I * cis(chi) * sh, I * cis(-chi) * sh, c(ch))
}

/// `[[cosh r, i e^{iθ} sinh r], [-i e^{-iθ} sinh r, cosh r]]`, the form
/// that factors as lower · diagonal · upper.
pub fn squeeze_ldu_mat(r: f64, theta: f64) -> Mat2C {
    Mat2C::new(c(r.cosh()), I * cis(theta) * r.sinh(), -I * cis(-theta) * r.sinh(), c(r.cosh()))
}

/// `exp(iΦk₀/2) = diag(e^{iΦ/2}, e^{-iΦ/2})`.
pub fn parity_mat(phi: f64) -> Mat2C {
    Mat2C::diag(cis(0.5 * phi), cis(-0.5 * phi))
}

/// `e^{iΦk₀} = diag(e^{iΦ}, e^{-iΦ})`.
pub fn k0_phase(phi: f64) -> Mat2C {
    Mat2C::diag(cis(phi), cis(-phi))
}

/// `max |S - e^{-e^{-iθ} tanh r k₋} e^{ln cosh r k₀} e^{e^{iθ} tanh r k₊}|`.
pub fn gauss_ldu_check(r: f64, theta: f64) -> Result<f64> {
    if !(r.abs() < LDU_GUARD) {
        return Err(Error::OverflowGuard(r));
    }
    let (k0, kp, km) = k_generators();
    let t = r.tanh();
    let lower = km.scale(-cis(-theta) * t).exp();
    let diag = k0.scale(c(r.cosh().ln())).exp();
    let upper = kp.scale(cis(theta) * t).exp();
    Ok(squeeze_ldu_mat(r, theta).max_abs_diff(&(lower * diag * upper)))
}

/// `D(ξ) P(Φ) D†(ξ)`.
pub fn parity_conjugate(r: f64, theta: f64, phi: f64) -> Mat2C {
    let d = displacement_mat(r, theta);
    d * parity_mat(phi) * d.dagger()
}

/// The entrywise closed form of `D(ξ) P(Φ) D†(ξ)`.
pub fn parity_conjugate_displayed(r: f64, theta: f64, phi: f64) -> Mat2C {
    let (p, q) = (cis(0.5 * phi), cis(-0.5 * phi));
    let (s2, c2) = (r.sin().powi(2), r.cos().powi(2));
    let off = -I * (0.5 * phi).sin() * (2.0 * r).sin();
    Mat2C::new(p * c2 + q * s2, off * cis(-theta), off * cis(theta), q * c2 + p * s2)
}

/// The entrywise closed form of `D²(ξ) P(Φ)`.
pub fn d2p_displayed(r: f64, theta: f64, phi: f64) -> Mat2C {
    let (s, co) = (2.0 * r).sin_cos();
    Mat2C::new(
        cis(0.5 * phi) * co,
        cis(-(0.5 * phi + theta)) * s,
        -cis(0.5 * phi + theta) * s,
        cis(-0.5 * phi) * co,
    )
}

/// Residuals of `D(ξ)P(π)D†(ξ) = D²(ξ)P(π)` and of
/// `D²(ξ)P(π) = P(π)D†²(-ξ)`, in that order.
///
/// `D(-ξ) = D†(ξ)`, so the second reads `D²P = PD²`, which holds only when
/// `D²` is diagonal; its residual is reported, not assumed small.
pub fn parity_inversion_check(r: f64, theta: f64) -> (f64, f64) {
    let p = parity_mat(std::f64::consts::PI);
    let d = displacement_mat(r, theta);
    let d2p = d * d * p;
    let first = (d * p * d.dagger()).max_abs_diff(&d2p);
    let dm = displacement_mat(r, theta + std::f64::consts::PI).dagger();
    let second = d2p.max_abs_diff(&(p * dm * dm));
    (first, second)
}

/// `U = k₀ cosh τ + e^{iχ} sinh τ k₊ + e^{-iχ} sinh τ k₋`; `U² = I`.
pub fn u_generator(tau: f64, chi: f64) -> Mat2C {
    let (k0, kp, km) = k_generators();
    k0.scale(c(tau.cosh())) + kp.scale(cis(chi) * tau.sinh()) + km.scale(cis(-chi) * tau.sinh())
}

/// `[[cosh τ, -i e^{iχ} sinh τ], [-i e^{-iχ} sinh τ, -cosh τ]]`, which is
/// [`u_generator`] at `-τ`.
pub fn u_displayed(tau: f64, chi: f64) -> Mat2C {
    Mat2C::new(c(tau.cosh()), -I * cis(chi) * tau.sinh(), -I * cis(-chi) * tau.sinh(), c(-tau.cosh()))
}

/// `exp(iΦU) = cos Φ I + i sin Φ U`, with `U` from [`u_generator`].
pub fn wigner_char_mat(phi: f64, tau: f64, chi: f64) -> Mat2C {
    Mat2C::identity().scale(c(phi.cos())) + u_generator(tau, chi).scale(I * phi.sin())
}

/// `T(g) = S(τ,χ) e^{iΦk₀} S(τ,χ)⁻¹`.
pub fn t_product(g: &GroupParams) -> Mat2C {
    let s = squeeze_mat(g.tau, g.chi);
    // S⁻¹ of a unit-determinant S is its adjugate
    let s_inv = Mat2C::new(s.a22, -s.a12, -s.a21, s.a11);
    s * k0_phase(g.phi) * s_inv
}

/// The entrywise closed form of `T(g)`.
pub fn t_displayed(g: &GroupParams) -> Mat2C {
    let (sp, cp) = g.phi.sin_cos();
    Mat2C::new(
        cp + I * sp * g.tau.cosh(),
        -cis(g.chi) * sp * g.tau.sinh(),
        -cis(-g.chi) * sp * g.tau.sinh(),
        cp - I * sp * g.tau.cosh(),
    )
}

/// The entrywise closed form of `T(g⁻¹)`.
pub fn t_inverse_displayed(g: &GroupParams) -> Mat2C {
    let (sp, cp) = g.phi.sin_cos();
    Mat2C::new(
        cp - I * sp * g.tau.cosh(),
        cis(g.chi) * sp * g.tau.sinh(),
        cis(-g.chi) * sp * g.tau.sinh(),
        cp + I * sp * g.tau.cosh(),
    )
}

/// `U = [[cos τ, -e^{iχ} sin τ], [-e^{-iχ} sin τ, -cos τ]]`: Hermitian,
/// unitary, `det U = -1`.
pub fn su2_u(tau: f64, chi: f64) -> Mat2C {
    let (s, co) = tau.sin_cos();
    Mat2C::new(c(co), -cis(chi) * s, -cis(-chi) * s, c(-co))
}

/// `exp(iΦU)` with `U` from [`su2_u`].
pub fn su2_char_mat(phi: f64, tau: f64, chi: f64) -> Mat2C {
    Mat2C::identity().scale(c(phi.cos())) + su2_u(tau, chi).scale(I * phi.sin())
}

/// The entrywise closed form of [`su2_char_mat`].
pub fn su2_char_displayed(phi: f64, tau: f64, chi: f64) -> Mat2C {
    let (sp, cp) = phi.sin_cos();
    let off = -I * tau.sin() * sp;
    Mat2C::new(cp + I * sp * tau.cos(), off * cis(chi), off * cis(-chi), cp - I * sp * tau.cos())
}

/// `e^{iφ} [[cos φ, i sin φ], [i sin φ, cos φ]]`. Its determinant is
/// `e^{2iφ}`; it is not a valid exponent for the characteristic function.
pub fn brachistochrone_u3(phi: f64) -> Mat2C {
    let (s, co) = phi.sin_cos();
    Mat2C::new(c(co), I * s, I * s, c(co)).scale(cis(phi))
}

/// `Q(θ) = (1/√2) [[i e^{iθ}, -i e^{iθ}], [1, 1]]`, columns `|+⟩, |-⟩`.
pub fn q_matrix(theta: f64) -> Mat2C {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mat2C::new(I * cis(theta) * h, -I * cis(theta) * h, c(h), c(h))
}

/// `H̃ = r [[0, e^{iθ}], [-e^{-iθ}, 0]]`. It is anti-Hermitian with
/// `H̃|±⟩ = ∓ir|±⟩` for the columns of [`q_matrix`].
pub fn h_tilde(r: f64, theta: f64) -> Mat2C {
    Mat2C::new(Z, cis(theta) * r, -cis(-theta) * r, Z)
}

/// `max ‖H̃|±⟩ - λ±|±⟩‖` for eigenvalues `(λ₊, λ₋)`.
pub fn h_tilde_eigen_residual(r: f64, theta: f64, lambda: (Complex64, Complex64)) -> f64 {
    let h = h_tilde(r, theta);
    let q = q_matrix(theta);
    let col = |k: usize| if k == 0 { (q.a11, q.a21) } else { (q.a12, q.a22) };
    let mut worst: f64 = 0.0;
    for (k, l) in [(0, lambda.0), (1, lambda.1)] {
        let (v1, v2) = col(k);
        let (w1, w2) = (h.a11 * v1 + h.a12 * v2, h.a21 * v1 + h.a22 * v2);
        worst = worst.max((w1 - l * v1).norm()).max((w2 - l * v2).norm());
    }
    worst
}

/// Tolerance for density-matrix and Hamiltonian structure checks.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// `ρ(t) = e^{-iht} ρ₀ e^{iht}`.
///
/// For Hermitian `h` this is the unitary conjugation. Otherwise the right
/// factor is the inverse of the left, not its adjoint; that is the form
/// that solves `iρ̇ = [h, ρ]` and it keeps the trace but not Hermiticity.
pub fn von_neumann_evolve(rho0: &Mat2C, h: &Mat2C, t: f64) -> Result<Mat2C> {
    if !rho0.is_hermitian(STRUCTURE_TOL) {
        return Err(Error::NonHermitianDensity(format!("ρ₀ - ρ₀† = {:e}", rho0.max_abs_diff(&rho0.dagger()))));
    }
    if (rho0.trace() - c(1.0)).norm() > STRUCTURE_TOL {
        return Err(Error::NonHermitianDensity(format!("Tr ρ₀ = {}", rho0.trace())));
    }
    if !t.is_finite() || !h.is_finite() {
        return Err(Error::InvalidInput("non-finite evolution input".into()));
    }
    let w = h.scale(-I * t).exp();
    let right = if h.is_hermitian(STRUCTURE_TOL) { w.dagger() } else { w.inverse()? };
    Ok(w * *rho0 * right)
}

/// `max |iρ̇ - [h, ρ]|` at `t` with a centered difference of step `dt`.
pub fn von_neumann_residual(rho0: &Mat2C, h: &Mat2C, t: f64, dt: f64) -> Result<f64> {
    let plus = von_neumann_evolve(rho0, h, t + dt)?;
    let minus = von_neumann_evolve(rho0, h, t - dt)?;
    let rho = von_neumann_evolve(rho0, h, t)?;
    let rho_dot = (plus - minus).scale(c(0.5 / dt));
    Ok((rho_dot.scale(I) - h.commutator(&rho)).max_abs())
}

/// How `T(g)` acts on `ŵ(ζ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjugation {
    /// `T ŵ T⁻¹`, the group action; stays in the `ŵ` family.
    #[default]
    Inverse,
    /// `T ŵ T†` taken literally; leaves the family unless `T` is unitary.
    Adjoint,
}

/// Recovers `(Φ, τ, χ)` with `M = exp(iΦU(τ,χ))`, `τ ≥ 0`, `Φ ∈ (-π, π]`.
///
/// Fails with `ParameterExtractionFailure` when `sin Φ ≈ 0` (then `τ, χ`
/// are undetermined) or when `M` is not of that form.
pub fn extract_params(m: &Mat2C) -> Result<GroupParams> {
    let cos_phi = 0.5 * m.trace();
    let scale = m.max_abs().max(1.0);
    if cos_phi.im.abs() > 1e-10 * scale {
        return Err(Error::ParameterExtractionFailure(format!("trace is not real: {}", m.trace())));
    }
    let cos_phi = cos_phi.re;
    // Im(M₁₁ - M₂₂) = 2 sin Φ cosh τ, and M₁₂M₂₁ = sin²Φ sinh²τ
    let sc = 0.5 * (m.a11 - m.a22).im;
    let prod = m.a12 * m.a21;
    if prod.im.abs() > 1e-10 * scale * scale {
        return Err(Error::ParameterExtractionFailure(format!("off-diagonal product is not real: {prod}")));
    }
    let s2 = sc * sc - prod.re;
    if !(s2 > 1e-16) {
        return Err(Error::ParameterExtractionFailure(format!("sin²Φ = {s2:e}; τ and χ are undetermined")));
    }
    let s = s2.sqrt() * sc.signum();
    let phi = s.atan2(cos_phi);
    let tau = (sc / s).max(1.0).acosh();
    let e_sh = -m.a12 / s;
    let chi = if tau == 0.0 { 0.0 } else { e_sh.arg() };
    let p = GroupParams::character(phi, tau, chi);
    let back = wigner_char_mat(phi, tau, chi);
    let err = back.max_abs_diff(m);
    if err > 1e-9 * scale {
        return Err(Error::ParameterExtractionFailure(format!(
            "matrix is not exp(iΦU): reconstruction differs by {err:e}"
        )));
    }
    Ok(p)
}

/// Parameters `g⁻¹ζ` of `T(g) ŵ(ζ) T(g)^{-1 or †}`.
pub fn transformed_params(g: &GroupParams, zeta: &GroupParams, conj: Conjugation) -> Result<GroupParams> {
    let t = t_product(g);
    let right = match conj {
        Conjugation::Inverse => t.inverse()?,
        Conjugation::Adjoint => t.dagger(),
    };
    extract_params(&(t * wigner_char_mat(zeta.phi, zeta.tau, zeta.chi) * right))
}

/// `|Tr(ρ T ŵ(ζ) T⁻¹) - Tr(ρ ŵ(g⁻¹ζ))|` with `g⁻¹ζ` re-extracted from the
/// conjugated matrix.
pub fn group_covariance_check(rho: &Mat2C, g: &GroupParams, zeta: &GroupParams) -> Result<f64> {
    group_covariance_check_with(rho, g, zeta, Conjugation::Inverse)
}

pub fn group_covariance_check_with(rho: &Mat2C, g: &GroupParams, zeta: &GroupParams, conj: Conjugation) -> Result<f64> {
    let t = t_product(g);
    let right = match conj {
        Conjugation::Inverse => t.inverse()?,
        Conjugation::Adjoint => t.dagger(),
    };
    let moved = t * wigner_char_mat(zeta.phi, zeta.tau, zeta.chi) * right;
    let p = extract_params(&moved)?;
    let lhs = (*rho * moved).trace();
    let rhs = (*rho * wigner_char_mat(p.phi, p.tau, p.chi)).trace();
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock_oracle::{expm, CMatrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0x5011)
    }

    #[test]
    fn generator_algebra() {
        let (k0, kp, km) = k_generators();
        assert_eq!(k0.commutator(&kp), kp.scale(c(2.0)));
        assert_eq!(k0.commutator(&km), km.scale(c(-2.0)));
        for k in [k0, kp, km] {
            assert_eq!(k.trace(), Z);
        }
    }

    #[test]
    fn displacement_squeeze_parity_examples() {
        assert_eq!(displacement_mat(0.0, 1.2), Mat2C::identity());
        let d = displacement_mat(PI / 2.0, 0.0);
        assert!(d.max_abs_diff(&Mat2C::new(c(0.0), c(1.0), c(-1.0), c(0.0))) < 1e-15);
        assert_eq!(squeeze_mat(0.0, 0.4), Mat2C::identity());
        assert_eq!(parity_mat(0.0), Mat2C::identity());
        assert!(parity_mat(PI).max_abs_diff(&Mat2C::diag(I, -I)) < 1e-15);
        let mut g = rng();
        for _ in 0..100 {
            let (r, th, phi): (f64, f64, f64) = (g.gen_range(-3.0..3.0), g.gen_range(-PI..PI), g.gen_range(-PI..PI));
            let d = displacement_mat(r, th);
            assert!((d.det() - c(1.0)).norm() < 1e-14 && d.is_unitary(1e-14));
            let s = squeeze_mat(r, th);
            assert!((s.det() - c(1.0)).norm() < 1e-12);
            assert!((s.dagger() * Mat2C::sigma_z() * s).max_abs_diff(&Mat2C::sigma_z()) < 1e-12);
            assert!((parity_mat(phi) * parity_mat(-phi)).max_abs_diff(&Mat2C::identity()) < 1e-15);
        }
    }

    #[test]
    fn squeeze_is_exponential_of_generators() {
        let (_, kp, km) = k_generators();
        let (tau, chi) = (0.8, -0.6);
        let xi = Complex64::from_polar(tau, chi);
        let e = (km.scale(xi.conj()) - kp.scale(xi)).scale(c(0.5)).exp();
        assert!(e.max_abs_diff(&squeeze_mat(tau, chi)) < 1e-14);
    }

    #[test]
    fn gauss_ldu() {
        assert!(gauss_ldu_check(0.0, 0.3).unwrap() < 1e-15);
        assert!(gauss_ldu_check(0.7, 1.1).unwrap() < 1e-12);
        let a = gauss_ldu_check(1.3, 0.4).unwrap();
        let b = gauss_ldu_check(1.3, 0.4 + 2.0 * PI).unwrap();
        assert!(a < 1e-12 && b < 1e-12);
        assert!(matches!(gauss_ldu_check(12.0, 0.0), Err(Error::OverflowGuard(_))));
    }

    #[test]
    fn parity_inversion() {
        assert_eq!(parity_inversion_check(0.0, 0.5), (0.0, 0.0));
        let (first, second) = parity_inversion_check(0.4, 0.9);
        assert!(first < 1e-12);
        assert!(second > 0.1, "second equality is not an identity: {second}");
        let (r, th, phi) = (0.3, 0.2, 1.0);
        assert!(parity_conjugate(r, th, phi).max_abs_diff(&parity_conjugate_displayed(r, th, phi)) < 1e-12);
        let d = displacement_mat(r, th);
        assert!((d * d * parity_mat(phi)).max_abs_diff(&d2p_displayed(r, th, phi)) < 1e-12);
        // away from Φ = π the first equality fails
        assert!(parity_conjugate(r, th, phi).max_abs_diff(&d2p_displayed(r, th, phi)) > 1e-2);
    }

    #[test]
    fn characteristic_function_forms() {
        assert!(wigner_char_mat(0.0, 0.7, 0.2).max_abs_diff(&Mat2C::identity()) < 1e-15);
        let mut g = rng();
        for _ in 0..50 {
            let p = GroupParams::character(g.gen_range(-PI..PI), g.gen_range(0.0..2.0), g.gen_range(-PI..PI));
            let w = wigner_char_mat(p.phi, p.tau, p.chi);
            assert!(w.max_abs_diff(&t_product(&p)) < 1e-12);
            assert!(w.max_abs_diff(&t_displayed(&p)) < 1e-12);
            assert!((t_product(&p).det() - c(1.0)).norm() < 1e-12);
            assert!((t_displayed(&p) * t_inverse_displayed(&p)).max_abs_diff(&Mat2C::identity()) < 1e-12);
            assert!((w.det() - c(1.0)).norm() < 1e-12);
            let u = u_generator(p.tau, p.chi);
            assert!((u * u).max_abs_diff(&Mat2C::identity()) < 1e-12);
            // the displayed U gives the other ordering S⁻¹ e^{iΦk₀} S
            let alt = (u_displayed(p.tau, p.chi).scale(I * p.phi)).exp();
            let s = squeeze_mat(p.tau, p.chi);
            let other = s.inverse().unwrap() * k0_phase(p.phi) * s;
            assert!(alt.max_abs_diff(&other) < 1e-12);
            assert!(alt.max_abs_diff(&wigner_char_mat(p.phi, -p.tau, p.chi)) < 1e-12);
        }
    }

    #[test]
    fn su2_form() {
        assert!(su2_char_mat(0.0, 0.4, 0.1).max_abs_diff(&Mat2C::identity()) < 1e-15);
        let mut g = rng();
        for _ in 0..20 {
            let (phi, tau, chi) = (g.gen_range(-PI..PI), g.gen_range(-PI..PI), g.gen_range(-PI..PI));
            let u = su2_u(tau, chi);
            assert!((u.det() + c(1.0)).norm() < 1e-14 && u.is_hermitian(1e-15) && u.is_unitary(1e-14));
            let w = su2_char_mat(phi, tau, chi);
            assert!(w.max_abs_diff(&su2_char_displayed(phi, tau, chi)) < 1e-12);
            assert!(w.max_abs_diff(&u.scale(I * phi).exp()) < 1e-12);
            assert!(w.is_unitary(1e-12));
        }
        let u3 = brachistochrone_u3(0.4);
        assert!((u3.det() - cis(0.8)).norm() < 1e-14);
    }

    #[test]
    fn closed_form_exponential_matches_pade() {
        let mut g = rng();
        for _ in 0..1000 {
            let mut e = [Z; 4];
            for v in e.iter_mut() {
                *v = Complex64::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0));
            }
            let m = Mat2C::new(e[0], e[1], e[2], e[3]);
            let m = m.scale(c(g.gen_range(0.0..5.0) / m.max_abs()));
            let cm = CMatrix::from_fn(2, |i, j| m.entries()[2 * i + j]);
            let p = expm(&cm).unwrap();
            let ch = m.exp();
            let scale = p.max_abs().max(1.0);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((p[(i, j)] - ch.entries()[2 * i + j]).norm() < 1e-10 * scale);
                }
            }
        }
        // nilpotent and near-degenerate exponents take the series branch
        let n = Mat2C::new(Z, c(2.0), Z, Z);
        assert!(n.exp().max_abs_diff(&(Mat2C::identity() + n)) < 1e-15);
    }

    #[test]
    fn h_tilde_spectrum() {
        let (r, th) = (0.8, 0.3);
        let h = h_tilde(r, th);
        assert!(h.dagger().max_abs_diff(&h.scale(c(-1.0))) < 1e-15);
        assert!(h_tilde_eigen_residual(r, th, (-I * r, I * r)) < 1e-12);
        assert!(h_tilde_eigen_residual(r, th, (c(r), c(-r))) > 0.5);
    }

    #[test]
    fn von_neumann() {
        let rho = Mat2C::new(c(0.7), Complex64::new(0.1, 0.2), Complex64::new(0.1, -0.2), c(0.3));
        let (_, kp, _) = k_generators();
        let herm = Mat2C::new(c(0.4), Complex64::new(0.3, -0.1), Complex64::new(0.3, 0.1), c(-0.2));
        assert_eq!(von_neumann_evolve(&rho, &herm, 0.0).unwrap(), rho);
        let diag_h = Mat2C::diag(c(1.0), c(-0.5));
        let diag_rho = Mat2C::diag(c(0.6), c(0.4));
        assert!(von_neumann_evolve(&diag_rho, &diag_h, 3.7).unwrap().max_abs_diff(&diag_rho) < 1e-15);
        for h in [herm, h_tilde(0.8, 0.3), kp] {
            let r = von_neumann_evolve(&rho, &h, 1.3).unwrap();
            assert!((r.trace() - c(1.0)).norm() < 1e-12);
            assert!(von_neumann_residual(&rho, &h, 1.3, 1e-4).unwrap() < 1e-6);
        }
        let bad = Mat2C::new(c(0.5), c(0.1), c(0.2), c(0.5));
        assert!(matches!(von_neumann_evolve(&bad, &herm, 1.0), Err(Error::NonHermitianDensity(_))));
    }

    #[test]
    fn covariance() {
        let rho = Mat2C::new(c(0.6), Complex64::new(0.2, 0.1), Complex64::new(0.2, -0.1), c(0.4));
        let zeta = GroupParams::character(0.9, 0.5, 0.3);
        let id = GroupParams::default();
        assert!(group_covariance_check(&rho, &id, &zeta).unwrap() < 1e-14);
        let p = transformed_params(&id, &zeta, Conjugation::Inverse).unwrap();
        assert!(p.angular_distance(&zeta) < 1e-12);
        // a pure k₀ phase shifts χ by twice the phase
        let g = GroupParams::character(0.35, 0.0, 0.0);
        let p = transformed_params(&g, &zeta, Conjugation::Inverse).unwrap();
        assert!(p.angular_distance(&GroupParams::character(0.9, 0.5, 0.3 + 0.7)) < 1e-12);
        assert!(group_covariance_check(&rho, &g, &zeta).unwrap() < 1e-12);
        let mut gen = rng();
        for _ in 0..50 {
            let g = GroupParams::character(gen.gen_range(-PI..PI), gen.gen_range(0.0..1.5), gen.gen_range(-PI..PI));
            let z = GroupParams::character(gen.gen_range(0.2..2.9), gen.gen_range(0.0..1.5), gen.gen_range(-PI..PI));
            assert!(group_covariance_check(&rho, &g, &z).unwrap() < 1e-10);
        }
        let g = GroupParams::character(0.7, 0.9, 0.2);
        assert!(matches!(
            group_covariance_check_with(&rho, &g, &zeta, Conjugation::Adjoint),
            Err(Error::ParameterExtractionFailure(_))
        ));
        assert!(matches!(
            extract_params(&Mat2C::identity()),
            Err(Error::ParameterExtractionFailure(_))
        ));
    }
}
