//! Hyperbolic oscillator `H = (p² - x²)/2`.
//!
//! Eigenfunctions satisfy `-½(ψ'' + x²ψ) = Eψ`. The decaying solution is
//! `W_{-iE/2,1/4}(ix²)/√x`; with `+iE/2` the same expression has eigenvalue
//! `-E` and serves as the adjoint partner.
//!
//! The Wigner shape is `F_n(ζ) = e^ζ L^{(1)}_{2n}(-2ζ)`, `ζ = p² - x²`, up to
//! an overall constant that stays unfixed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase_space::{GridSpec, PhaseSpacePoint, WignerGrid};
use crate::specfun::{hermite, laguerre, laguerre_c, whittaker_w, whittaker_w_integral, whittaker_w_kummer, SpecFunResult};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("hyperbolic eigenfunction needs x > 0, got {x}")))
    }
}

/// `W_{-iE/2,1/4}(ix²)/√x`, unnormalized, eigenvalue `E`.
pub fn hyperbolic_eigenfunction(energy: f64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    let w = whittaker_w(Complex64::new(0.0, -0.5 * energy), c(0.25), Complex64::new(0.0, x * x))?;
    Ok(w.value / x.sqrt())
}

/// The adjoint partner, equal to the eigenfunction formula at `-E`.
pub fn hyperbolic_adjoint(energy: f64, x: f64) -> Result<Complex64> {
    hyperbolic_eigenfunction(-energy, x)
}

/// [`hyperbolic_eigenfunction`] through the Laplace integral of `W`.
pub fn hyperbolic_eigenfunction_integral(energy: f64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    let w = whittaker_w_integral(Complex64::new(0.0, -0.5 * energy), c(0.25), Complex64::new(0.0, x * x))?;
    Ok(w.value / x.sqrt())
}

/// `-½(ψ'' + x²ψ) - Eψ`, relative to `|ψ|`, by centered differences.
pub fn hyperbolic_ode_residual(energy: f64, xs: &[f64], h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in xs {
        let (m, z, p) = (
            hyperbolic_eigenfunction(energy, x - h)?,
            hyperbolic_eigenfunction(energy, x)?,
            hyperbolic_eigenfunction(energy, x + h)?,
        );
        let d2 = (p - 2.0 * z + m) / (h * h);
        let r = -0.5 * (d2 + z * (x * x)) - z * energy;
        worst = worst.max(r.norm() / z.norm());
    }
    Ok(worst)
}

/// Shape `e^ζ L^{(1)}_{2n}(-2ζ)` with `ζ = p² - x²`.
pub fn hyperbolic_wigner(n: usize, pt: PhaseSpacePoint) -> Result<f64> {
    let zeta = pt.p * pt.p - pt.x * pt.x;
    Ok(zeta.exp() * laguerre(2 * n, 1.0, -2.0 * zeta)?)
}

/// The shape through the conversion `W_{m+1,1/2}(z) = (-1)^m m! e^{-z/2} z L^{(1)}_m(z)`
/// at `m = 2n`, `z = -2ζ`, with `W` from the terminating Kummer sum.
pub fn hyperbolic_wigner_via_whittaker(n: usize, pt: PhaseSpacePoint) -> Result<f64> {
    let zeta = pt.p * pt.p - pt.x * pt.x;
    if zeta == 0.0 {
        return Err(Error::SingularPoint("conversion form at ζ = 0".into()));
    }
    let z = c(-2.0 * zeta);
    let w = whittaker_w_kummer(c(2.0 * n as f64 + 1.0), c(0.5), z)?.value;
    Ok((w / (z * factorial(2 * n))).re)
}

pub fn hyperbolic_wigner_grid(n: usize, spec: &GridSpec) -> Result<WignerGrid> {
    WignerGrid::try_from_fn(*spec, |x, p| hyperbolic_wigner(n, PhaseSpacePoint::new(x, p)))
}

/// `(-1)^m m! e^{-z/2} z L^{(1)}_m(z)`.
pub fn whittaker_laguerre_conversion(m: usize, z: Complex64) -> Result<Complex64> {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok((-0.5 * z).exp() * z * laguerre_c(m, c(1.0), z)? * (sign * factorial(m)))
}

/// `W_{n+1/4,-1/4}(z)` from `2^{-2n} z^{1/4} H_{2n}(√z) e^{-z/2}`, real `z > 0`.
pub fn even_state_conversion(n: usize, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::DomainError(format!("needs z > 0, got {z}")));
    }
    Ok(2f64.powi(-2 * n as i32) * z.powf(0.25) * hermite(2 * n, z.sqrt())? * (-0.5 * z).exp())
}

/// `W_{n+3/4,1/4}(z)` from `2^{-2n-1} z^{1/4} H_{2n+1}(√z) e^{-z/2}`, real `z > 0`.
pub fn odd_state_conversion(n: usize, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::DomainError(format!("needs z > 0, got {z}")));
    }
    Ok(2f64.powi(-2 * n as i32 - 1) * z.powf(0.25) * hermite(2 * n + 1, z.sqrt())? * (-0.5 * z).exp())
}

/// `W_{n+1/4,-1/4}(z)` evaluated directly.
pub fn even_state_whittaker(n: usize, z: f64) -> Result<SpecFunResult> {
    whittaker_w(c(n as f64 + 0.25), c(-0.25), c(z))
}

/// `W_{n+3/4,1/4}(z)` evaluated directly.
pub fn odd_state_whittaker(n: usize, z: f64) -> Result<SpecFunResult> {
    whittaker_w(c(n as f64 + 0.75), c(0.25), c(z))
}

/// `W_{iE,0}(2iζ)/√ζ`, a solution of the real part of the hyperbolic
/// star-eigenvalue equation `ζf + ζF'' + F' = 2EF` along `ζ = p² - x²`.
pub fn hyperbolic_star_solution(energy: f64, pt: PhaseSpacePoint) -> Result<Complex64> {
    let zeta = pt.p * pt.p - pt.x * pt.x;
    if zeta == 0.0 {
        return Err(Error::SingularPoint("hyperbolic star solution at ζ = 0".into()));
    }
    let w = whittaker_w(Complex64::new(0.0, energy), c(0.0), Complex64::new(0.0, 2.0 * zeta))?;
    Ok(w.value / c(zeta).sqrt())
}
