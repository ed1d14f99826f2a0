//! Two table integrals used by the oscillator Wigner functions, each with a
//! quadrature companion.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{finite, hermite_c, laguerre, laguerre_c};
use crate::error::{Error, Result};
use crate::quadrature::{exp_sinh, gauss_hermite};

/// `∫_0^∞ e^{-bx} L_n(x) dx = (b-1)^n / b^{n+1}`.
pub fn gr_7_414_6(b: f64, n: usize) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::DomainError(format!("b must be positive, got {b}")));
    }
    let v = (b - 1.0).powi(n as i32) / b.powi(n as i32 + 1);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { what: "gr_7_414_6" })
    }
}

/// The same integral by exp-sinh quadrature.
pub fn gr_7_414_6_quadrature(b: f64, n: usize) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::DomainError(format!("b must be positive, got {b}")));
    }
    let q = exp_sinh(
        |x| Ok(Complex64::new((-b * x).exp() * laguerre(n, 0.0, x)?, 0.0)),
        1e-13,
        1e-15,
    )?;
    Ok(q.value.re)
}

/// `∫ e^{-u²} H_m(u+y) H_n(u+z) du = 2^n √π m! z^{n-m} L_m^{(n-m)}(-2yz)` for `m ≤ n`.
pub fn gr_7_377(m: usize, n: usize, y: Complex64, z: Complex64) -> Result<Complex64> {
    if m > n {
        return Err(Error::DomainError(format!("gr_7_377 needs m ≤ n, got m={m}, n={n}")));
    }
    let m_fact: f64 = (1..=m).map(|k| k as f64).product();
    let lag = laguerre_c(m, Complex64::new((n - m) as f64, 0.0), -2.0 * y * z)?;
    let pre = 2f64.powi(n as i32) * PI.sqrt() * m_fact;
    finite(z.powu((n - m) as u32) * lag * pre, "gr_7_377")
}

/// The same integral by Gauss–Hermite quadrature (exact for the polynomial
/// integrand once the node count exceeds `(m+n)/2`).
pub fn gr_7_377_quadrature(m: usize, n: usize, y: Complex64, z: Complex64) -> Result<Complex64> {
    let nodes = ((m + n) / 2 + 8).max(16);
    let (u, w) = gauss_hermite(nodes);
    let mut acc = Complex64::new(0.0, 0.0);
    for (ui, wi) in u.iter().zip(&w) {
        let hm = hermite_c(m, y + ui)?;
        let hn = hermite_c(n, z + ui)?;
        acc += hm * hn * *wi;
    }
    finite(acc, "gr_7_377_quadrature")
}

/// `∫ e^{-u²} |H_m(u+y) H_n(u+z)| du`, the scale against which the
/// integral's cancellation is measured.
pub fn gr_7_377_mass(m: usize, n: usize, y: Complex64, z: Complex64) -> Result<f64> {
    let nodes = ((m + n) / 2 + 8).max(16);
    let (u, w) = gauss_hermite(nodes);
    let mut acc = 0.0;
    for (ui, wi) in u.iter().zip(&w) {
        acc += (hermite_c(m, y + ui)? * hermite_c(n, z + ui)?).norm() * wi;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gr_7_414_6_examples() {
        assert_eq!(gr_7_414_6(1.0, 3).unwrap(), 0.0);
        assert!((gr_7_414_6(2.0, 2).unwrap() - 0.125).abs() < 1e-15);
        for n in 0..10 {
            let want = (-0.5f64).powi(n as i32) * 2f64.powi(n as i32 + 1);
            assert!((gr_7_414_6(0.5, n).unwrap() - want).abs() < 1e-13);
        }
        assert!(matches!(gr_7_414_6(0.0, 1), Err(Error::DomainError(_))));
    }

    #[test]
    fn gr_7_414_6_matches_quadrature() {
        for &b in &[0.5, 1.0, 2.0, 3.5] {
            for n in 0..8 {
                let a = gr_7_414_6(b, n).unwrap();
                let q = gr_7_414_6_quadrature(b, n).unwrap();
                assert!((a - q).abs() < 1e-10 * a.abs().max(1.0), "b={b} n={n}: {a} vs {q}");
            }
        }
    }

    #[test]
    fn gr_7_377_examples() {
        let one = gr_7_377(0, 0, Complex64::new(0.4, 0.0), Complex64::new(-1.0, 0.0)).unwrap();
        assert!((one - PI.sqrt()).norm() < 1e-14);
        // 25-digit reference
        let v = gr_7_377(1, 2, Complex64::new(0.3, 0.0), Complex64::new(0.7, 0.0)).unwrap();
        assert!((v.re - 12.010147293735775629).abs() < 1e-12);
        assert!(gr_7_377(3, 2, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn gr_7_377_constant_is_factorial() {
        // the Γ(m) normalization disagrees with quadrature by a factor m
        let (y, z) = (Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.9));
        let q = gr_7_377_quadrature(3, 3, y, z).unwrap();
        let closed = gr_7_377(3, 3, y, z).unwrap();
        assert!((q - closed).norm() < 1e-10 * q.norm());
        let with_gamma_m = closed / 3.0;
        assert!((q - with_gamma_m).norm() > 0.5 * q.norm());
    }

    #[test]
    fn gr_7_377_random_complex_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(7377);
        for _ in 0..20 {
            let y = Complex64::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(-PI..PI));
            let z = Complex64::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(-PI..PI));
            for n in 0..=8 {
                for m in 0..=n {
                    let a = gr_7_377(m, n, y, z).unwrap();
                    let q = gr_7_377_quadrature(m, n, y, z).unwrap();
                    // relative to the integrand's absolute mass, since the
                    // quadrature cancels when z is near zero
                    let scale = gr_7_377_mass(m, n, y, z).unwrap().max(q.norm());
                    assert!((a - q).norm() <= 1e-8 * scale, "m={m} n={n} y={y} z={z}");
                }
            }
        }
    }}
