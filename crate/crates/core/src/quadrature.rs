//! Quadrature rules used by the numerical oracles.
//!
//! Gauss rules are generated by Newton iteration on the three-term
//! recurrences; the semi-infinite rule is the double-exponential
//! (exp-sinh) transform with level halving.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Composite trapezoid rule over uniformly spaced samples.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let interior: f64 = values[1..n - 1].iter().sum();
            h * (interior + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Nodes and weights of the `n`-point Gauss–Hermite rule (weight `e^{-x²}`).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_hermite needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let pim4 = PI.powf(-0.25);
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0_f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // normalized Hermite recurrence
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 3e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let xm = 0.5 * (b + a);
    let xl = 0.5 * (b - a);
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 3e-16 {
                break;
            }
        }
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

/// Value and error estimate of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub est_error: f64,
    pub levels: usize,
}

const EXP_SINH_T_MIN: f64 = -6.5;
const EXP_SINH_T_MAX: f64 = 6.0;
const EXP_SINH_MAX_LEVEL: usize = 9;

/// Integrates `f` over `(0, ∞)` with the exp-sinh substitution
/// `x = exp(π/2 · sinh t)`.
///
/// The integrand may be singular (integrably) at the origin and must
/// decay at infinity. The closure may fail, e.g. when a special-function
/// evaluation leaves its supported range; sampling stops outward once the
/// transformed terms are negligible, so such points are usually never
/// reached.
pub fn exp_sinh<F>(mut f: F, rel_tol: f64, abs_tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut term = |t: f64| -> Result<Complex64> {
        let s = FRAC_PI_2 * t.sinh();
        let x = s.exp();
        if x == 0.0 || !x.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let w = FRAC_PI_2 * t.cosh() * x;
        let v = f(x)? * w;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonconvergentQuadrature(format!(
                "non-finite integrand at x = {x:e}"
            )))
        }
    };

    // Sum over t = offset + k*step in one direction until terms die off.
    fn sweep<G: FnMut(f64) -> Result<Complex64>>(
        term: &mut G,
        start: f64,
        step: f64,
        limit: f64,
    ) -> Result<(Complex64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut peak = 0.0_f64;
        let mut small = 0;
        let mut t = start;
        while (step > 0.0 && t <= limit) || (step < 0.0 && t >= limit) {
            let v = term(t)?;
            let mag = v.norm();
            peak = peak.max(mag);
            acc += v;
            if mag <= 1e-20 * peak.max(1e-300) || mag < 1e-300 {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            t += step;
        }
        Ok((acc, peak))
    }

    let mut h = 0.5_f64;
    // level 0: all multiples of h
    let (up, _) = sweep(&mut term, 0.0, h, EXP_SINH_T_MAX)?;
    let (down, _) = sweep(&mut term, -h, -h, EXP_SINH_T_MIN)?;
    let mut sum = up + down;
    let mut estimate = sum * h;
    for level in 1..=EXP_SINH_MAX_LEVEL {
        // new points are odd multiples of h/2
        let half = 0.5 * h;
        let (up, _) = sweep(&mut term, half, h, EXP_SINH_T_MAX)?;
        let (down, _) = sweep(&mut term, -half, -h, EXP_SINH_T_MIN)?;
        sum += up + down;
        h = half;
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        if level >= 3 && diff <= rel_tol * estimate.norm() + abs_tol {
            return Ok(QuadResult {
                value: estimate,
                est_error: diff,
                levels: level,
            });
        }
    }
    Err(Error::NonconvergentQuadrature(format!(
        "exp-sinh did not reach rel_tol {rel_tol:e} after {EXP_SINH_MAX_LEVEL} levels"
    )))
}
