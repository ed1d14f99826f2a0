//! Covariance of the Wigner transform under translation, boost, parity and
//! conjugation, plus reality and the marginals.
//!
//! Each check transforms the state and compares against the untransformed
//! Wigner function evaluated on a moved lattice, so no interpolation enters.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::transform::wigner_transform_diagnostic;
use super::{marginal_p, marginal_x, total_probability, GridSpec, Wavefunction, WignerGrid};
use crate::error::Result;

/// Half width of the sampling window around the grid.
pub const SAMPLE_HALF_WIDTH: f64 = 10.0;

fn transform_of(f: &dyn Fn(f64) -> Complex64, spec: &GridSpec) -> Result<(WignerGrid, f64)> {
    let half = SAMPLE_HALF_WIDTH.max(spec.x0.abs().max(spec.x(spec.nx - 1).abs()) + 4.0);
    let psi = Wavefunction::sample_for_grid(spec, 1, half, f)?;
    let (g, d) = wigner_transform_diagnostic(&psi, spec)?;
    Ok((g, d.max_imag))
}

/// A normalized, asymmetric, complex test state.
pub fn test_state(x: f64) -> Complex64 {
    // |ψ|² integrates to 1: the polynomial prefactor's norm is folded in
    let shape = Complex64::new(1.0, 0.0) + Complex64::from_polar(0.8, 0.4) * x;
    let envelope = Complex64::new(-0.5 * (x - 0.3).powi(2), 0.5 * x).exp();
    let norm = (PI.sqrt() * (1.0 + 2.0 * 0.8 * 0.4f64.cos() * 0.3 + 0.64 * (0.09 + 0.5))).sqrt();
    shape * envelope / norm
}

/// `f[ψ(· + a)](x, p)` vs `f[ψ](x + a, p)`.
pub fn translation_residual(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec, a: f64) -> Result<f64> {
    let moved = transform_of(&|x| psi(x + a), spec)?.0;
    let shifted = GridSpec { x0: spec.x0 + a, ..*spec };
    let base = transform_of(psi, &shifted)?.0;
    max_diff(&moved.values, &base.values)
}

/// `f[e^{ip'x/ħ} ψ](x, p)` vs `f[ψ](x, p - p')`.
pub fn boost_residual(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec, p_shift: f64) -> Result<f64> {
    let hbar = spec.hbar;
    let moved = transform_of(&|x| psi(x) * Complex64::from_polar(1.0, p_shift * x / hbar), spec)?.0;
    let shifted = GridSpec { p0: spec.p0 - p_shift, ..*spec };
    let base = transform_of(psi, &shifted)?.0;
    max_diff(&moved.values, &base.values)
}

/// `f[ψ(-·)](x, p)` vs `f[ψ](-x, -p)`.
pub fn parity_residual(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec) -> Result<f64> {
    let moved = transform_of(&|x| psi(-x), spec)?.0;
    let mirror = GridSpec { x0: -spec.x(spec.nx - 1), p0: -spec.p(spec.np - 1), ..*spec };
    let base = transform_of(psi, &mirror)?.0;
    let mut worst: f64 = 0.0;
    for i in 0..spec.nx {
        for j in 0..spec.np {
            worst = worst.max((moved.get(i, j) - base.get(spec.nx - 1 - i, spec.np - 1 - j)).abs());
        }
    }
    Ok(worst)
}

/// `f[ψ*](x, p)` vs `f[ψ](x, -p)`.
pub fn conjugation_residual(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec) -> Result<f64> {
    let moved = transform_of(&|x| psi(x).conj(), spec)?.0;
    let mirror = GridSpec { p0: -spec.p(spec.np - 1), ..*spec };
    let base = transform_of(psi, &mirror)?.0;
    let mut worst: f64 = 0.0;
    for i in 0..spec.nx {
        for j in 0..spec.np {
            worst = worst.max((moved.get(i, j) - base.get(i, spec.np - 1 - j)).abs());
        }
    }
    Ok(worst)
}

/// `max |Im f|` of the raw transform.
pub fn reality_residual(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec) -> Result<f64> {
    Ok(transform_of(psi, spec)?.1)
}

/// `max |∫f dp - |ψ|²|` and `max |∫f dx - |φ|²|`, with `φ` the unitary
/// Fourier transform of `ψ` by trapezoid quadrature.
pub fn marginal_residuals(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec) -> Result<(f64, f64)> {
    let f = transform_of(psi, spec)?.0;
    let mx = marginal_x(&f);
    let rx = (0..spec.nx).map(|i| (mx[i] - psi(spec.x(i)).norm_sqr()).abs()).fold(0.0, f64::max);
    let mp = marginal_p(&f);
    let (lo, h) = (-SAMPLE_HALF_WIDTH, 0.005);
    let n = (2.0 * SAMPLE_HALF_WIDTH / h) as usize + 1;
    let samples: Vec<(f64, Complex64)> = (0..n).map(|k| (lo + k as f64 * h, psi(lo + k as f64 * h))).collect();
    let hbar = spec.hbar;
    let rp = (0..spec.np)
        .map(|j| {
            let p = spec.p(j);
            let phi: Complex64 =
                samples.iter().map(|(x, v)| v * Complex64::from_polar(1.0, -p * x / hbar)).sum::<Complex64>() * h
                    / (2.0 * PI * hbar).sqrt();
            (mp[j] - phi.norm_sqr()).abs()
        })
        .fold(0.0, f64::max);
    Ok((rx, rp))
}

/// `|∬f - 1|` for the transform of `psi`.
pub fn normalization_residual(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec) -> Result<f64> {
    Ok((total_probability(&transform_of(psi, spec)?.0) - 1.0).abs())
}

fn max_diff(a: &[f64], b: &[f64]) -> Result<f64> {
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// All axiom residuals for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub translation: f64,
    pub boost: f64,
    pub parity: f64,
    pub conjugation: f64,
    pub reality: f64,
    pub marginal_x: f64,
    pub marginal_p: f64,
    pub normalization: f64,
}

pub fn axiom_report(psi: &dyn Fn(f64) -> Complex64, spec: &GridSpec, a: f64, p_shift: f64) -> Result<AxiomReport> {
    let (mx, mp) = marginal_residuals(psi, spec)?;
    Ok(AxiomReport {
        translation: translation_residual(psi, spec, a)?,
        boost: boost_residual(psi, spec, p_shift)?,
        parity: parity_residual(psi, spec)?,
        conjugation: conjugation_residual(psi, spec)?,
        reality: reality_residual(psi, spec)?,
        marginal_x: mx,
        marginal_p: mp,
        normalization: normalization_residual(psi, spec)?,
    })
}
