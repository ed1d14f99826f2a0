use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::phase_space::{AnalyticTag, GridSpec, PhaseSpacePoint, Wavefunction, WignerGrid};
use crate::specfun::laguerre;

/// Largest oscillator level accepted by the closed forms.
pub const SHO_CEILING: usize = 50;

fn check(n: usize) -> Result<()> {
    if n > SHO_CEILING {
        Err(Error::OverflowCeiling {
            order: n,
            ceiling: SHO_CEILING,
        })
    } else {
        Ok(())
    }
}

/// `π^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x²/2}` by the normalized recurrence
/// `ψ_{k+1} = √(2/(k+1)) x ψ_k - √(k/(k+1)) ψ_{k-1}`, which never forms
/// `H_n` or `n!` separately.
pub fn sho_eigenfunction(n: usize, x: f64) -> Result<f64> {
    check(n)?;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `((-1)^n / π) e^{-(x²+p²)} L_n(2(x²+p²))`, with `ħ = 1`.
pub fn sho_wigner(n: usize, pt: PhaseSpacePoint) -> Result<f64> {
    check(n)?;
    let r2 = pt.x * pt.x + pt.p * pt.p;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign / PI * (-r2).exp() * laguerre(n, 0.0, 2.0 * r2)?)
}

/// [`sho_wigner`] sampled on a lattice.
pub fn sho_wigner_grid(n: usize, spec: &GridSpec) -> Result<WignerGrid> {
    if (spec.hbar - 1.0).abs() > 1e-15 {
        return Err(Error::InvalidInput("the closed-form oscillator grids assume ħ = 1".into()));
    }
    WignerGrid::try_from_fn(*spec, |x, p| sho_wigner(n, PhaseSpacePoint::new(x, p)))
}

/// Eigenstate `ψ_n` on a lattice compatible with `spec`, wide enough that
/// the tails fall below the transform's decay tolerance.
pub fn sho_wavefunction(n: usize, spec: &GridSpec) -> Result<Wavefunction> {
    check(n)?;
    // ψ_n is below 1e-13 beyond √(2n+1) + 7
    let half_width = (2.0 * n as f64 + 1.0).sqrt() + 7.0;
    let mut err = None;
    let psi = Wavefunction::sample_for_grid(spec, 1, half_width, |x| match sho_eigenfunction(n, x) {
        Ok(v) => Complex64::new(v, 0.0),
        Err(e) => {
            err = Some(e);
            Complex64::new(0.0, 0.0)
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(psi.with_tag(AnalyticTag::ShoN { n })),
    }
}

/// Relative residual of the Laguerre equation `zL'' + (1-z)L' + nL = 0`
/// for `L(z) = (-1)^n π e^{z/2} f_n` read off the Wigner function along
/// `z = 2(x² + p²)`, with centered differences of step `h` in `z`.
pub fn sho_laguerre_ode_residual(n: usize, zs: &[f64], h: f64) -> Result<f64> {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let l = |z: f64| -> Result<f64> {
        let x = (0.5 * z).sqrt();
        Ok(sign * PI * (0.5 * z).exp() * sho_wigner(n, PhaseSpacePoint::new(x, 0.0))?)
    };
    let mut worst: f64 = 0.0;
    for &z in zs {
        let (lm, l0, lp) = (l(z - h)?, l(z)?, l(z + h)?);
        let d1 = (lp - lm) / (2.0 * h);
        let d2 = (lp - 2.0 * l0 + lm) / (h * h);
        let res = z * d2 + (1.0 - z) * d1 + n as f64 * l0;
        let scale = (z * d2).abs().max(((1.0 - z) * d1).abs()).max((n as f64 * l0).abs()).max(1.0);
        worst = worst.max(res.abs() / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::trapezoid;
    use crate::specfun::hermite;

    #[test]
    fn eigenfunction_examples() {
        assert!((sho_eigenfunction(0, 0.0).unwrap() - 0.7511255444649425).abs() < 1e-15);
        assert_eq!(sho_eigenfunction(1, 0.0).unwrap(), 0.0);
        assert!(sho_eigenfunction(51, 0.0).is_err());
    }

    #[test]
    fn recurrence_matches_hermite_form() {
        for n in 0..12 {
            let norm = (PI.sqrt() * 2f64.powi(n as i32) * (1..=n).map(|k| k as f64).product::<f64>()).sqrt();
            for &x in &[-2.5, -0.3, 0.0, 1.1, 3.7] {
                let want = hermite(n, x).unwrap() * (-0.5 * x * x).exp() / norm;
                assert!((sho_eigenfunction(n, x).unwrap() - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn eigenfunctions_are_normalized() {
        let dx = 0.01;
        let xs: Vec<f64> = (0..2001).map(|k| -10.0 + dx * k as f64).collect();
        for n in 0..=10 {
            let d: Vec<f64> = xs.iter().map(|&x| sho_eigenfunction(n, x).unwrap().powi(2)).collect();
            assert!((trapezoid(&d, dx) - 1.0).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn wigner_examples() {
        let o = PhaseSpacePoint::new(0.0, 0.0);
        assert!((sho_wigner(0, o).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!((sho_wigner(1, o).unwrap() + 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn laguerre_equation_is_recovered() {
        let zs: Vec<f64> = (1..40).map(|k| 0.25 * k as f64).collect();
        for n in 0..6 {
            assert!(sho_laguerre_ode_residual(n, &zs, 1e-3).unwrap() < 1e-6);
        }
    }
}
