//! Whittaker functions `M_{κ,μ}(z)` and `W_{κ,μ}(z)` on the principal
//! branch `arg z ∈ (-π, π)`.
//!
//! Routes for `W`:
//! - terminating case (`½+μ-κ` a nonpositive integer for `±μ`): Laguerre form,
//! - `2μ` an integer: logarithmic Tricomi series,
//! - otherwise: connection formula through two `M` series.
//!
//! The Laplace-type integral is exposed separately as
//! [`whittaker_w_integral`] and serves as the independent cross-check.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{digamma, gamma_rel_error, ln_gamma, rgamma};
use super::{as_integer, finite, laguerre_c, Method, SpecFunResult};
use crate::error::{Error, Result};
use crate::quadrature::exp_sinh;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Limits for the confluent series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerOptions {
    /// Largest `|z|` the series routes accept.
    pub series_ceiling: f64,
    /// Maximum number of series terms.
    pub max_terms: usize,
    /// Beyond this `|z|` the non-terminating `W` is continued along the
    /// ray through `z` by Taylor steps of its differential equation.
    pub series_radius: f64,
}

impl Default for WhittakerOptions {
    fn default() -> Self {
        Self {
            series_ceiling: 50.0,
            max_terms: 200,
            series_radius: 6.0,
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

struct Series {
    sum: Complex64,
    abs_sum: f64,
    tail: f64,
}

/// Kummer series `Σ (a)_k / ((b)_k k!) z^k`.
fn kummer_series(a: Complex64, b: Complex64, z: Complex64, opts: &WhittakerOptions) -> Result<Series> {
    let mut term = c(1.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    for k in 0..opts.max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        sum += term;
        abs_sum += term.norm();
        if term.norm() == 0.0 {
            return Ok(Series { sum, abs_sum, tail: 0.0 });
        }
        let r = ratio.norm();
        if r < 0.5 && term.norm() <= f64::EPSILON * 1e-2 * sum.norm() {
            let tail = term.norm() * r / (1.0 - r);
            return Ok(Series { sum, abs_sum, tail });
        }
    }
    Err(Error::SeriesDivergence {
        terms: opts.max_terms,
        abs_z: z.norm(),
    })
}

fn on_branch_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

/// `z^p` on the principal branch.
fn cpow(z: Complex64, p: Complex64) -> Complex64 {
    if z == c(0.0) {
        return if p.re > 0.0 { c(0.0) } else { c(f64::INFINITY) };
    }
    (p * z.ln()).exp()
}

/// Whittaker `M_{κ,μ}(z)` with default options.
pub fn whittaker_m(kappa: Complex64, mu: Complex64, z: Complex64) -> Result<SpecFunResult> {
    whittaker_m_with(kappa, mu, z, &WhittakerOptions::default())
}

/// `M_{κ,μ}(z) = e^{-z/2} z^{μ+½} M(½+μ-κ, 1+2μ, z)`.
pub fn whittaker_m_with(
    kappa: Complex64,
    mu: Complex64,
    z: Complex64,
    opts: &WhittakerOptions,
) -> Result<SpecFunResult> {
    let b = 1.0 + 2.0 * mu;
    if let Some(k) = as_integer(b) {
        if k <= 0 {
            return Err(Error::ParameterPole(format!("2μ = {} is a negative integer", 2.0 * mu)));
        }
    }
    if z.norm() > opts.series_ceiling {
        return Err(Error::SeriesDivergence {
            terms: opts.max_terms,
            abs_z: z.norm(),
        });
    }
    if z == c(0.0) {
        if (mu + 0.5).re > 0.0 {
            return SpecFunResult::new(c(0.0), 0.0, Method::Series);
        }
        return Err(Error::SingularPoint("M_{κ,μ}(0) with Re(μ+½) ≤ 0".into()));
    }
    if on_branch_cut(z) && as_integer(mu + 0.5).is_none() {
        return Err(Error::BranchCutEvaluation(z.re));
    }
    let a = 0.5 + mu - kappa;
    let s = kummer_series(a, b, z, opts)?;
    let pre = (-0.5 * z).exp() * cpow(z, mu + 0.5);
    let err = pre.norm() * (s.tail + 4.0 * f64::EPSILON * s.abs_sum);
    SpecFunResult::new(finite(pre * s.sum, "whittaker_m")?, err, Method::Series)
}

/// Whittaker `W_{κ,μ}(z)` with default options.
pub fn whittaker_w(kappa: Complex64, mu: Complex64, z: Complex64) -> Result<SpecFunResult> {
    whittaker_w_with(kappa, mu, z, &WhittakerOptions::default())
}

/// Whittaker `W_{κ,μ}(z)`, choosing the route from the parameters.
pub fn whittaker_w_with(
    kappa: Complex64,
    mu: Complex64,
    z: Complex64,
    opts: &WhittakerOptions,
) -> Result<SpecFunResult> {
    if z == c(0.0) {
        return Err(Error::SingularPoint("W_{κ,μ}(0)".into()));
    }
    // W is even in μ; take the half plane Re μ ≥ 0 for the series routes.
    let mu = if mu.re < 0.0 { -mu } else { mu };

    if let Some(r) = terminating(kappa, mu, z)? {
        return Ok(r);
    }
    if on_branch_cut(z) {
        return Err(Error::BranchCutEvaluation(z.re));
    }
    if z.norm() > opts.series_radius {
        return continued(kappa, mu, z, opts);
    }
    series_route(kappa, mu, z, opts)
}

fn series_route(kappa: Complex64, mu: Complex64, z: Complex64, opts: &WhittakerOptions) -> Result<SpecFunResult> {
    match as_integer(2.0 * mu) {
        Some(n) => log_series(kappa, mu, n as usize, z, opts),
        None => connection(kappa, mu, z, opts),
    }
}

// Radius where the asymptotic expansion starts; grows with the parameters.
const ASYMPTOTIC_RADIUS: f64 = 40.0;

/// `e^{-z/2} z^κ Σ (½+μ-κ)_k (½-μ-κ)_k / k! (-z)^{-k}` with its derivative,
/// summed to the first term below `1e-17` of the total.
fn asymptotic(kappa: Complex64, mu: Complex64, z: Complex64) -> Option<(Complex64, Complex64, f64)> {
    let (a, b) = (0.5 + mu - kappa, 0.5 - mu - kappa);
    let mut term = c(1.0);
    let mut s = c(0.0);
    let mut ds = c(0.0);
    let mut prev = f64::INFINITY;
    for k in 0..400 {
        let kf = k as f64;
        s += term;
        ds += term * (-kf) / z;
        let next = term * (a + kf) * (b + kf) / ((kf + 1.0) * -z);
        let n = next.norm();
        if n <= 1e-17 * s.norm() {
            let pre = (-0.5 * z).exp() * cpow(z, kappa);
            let w = pre * s;
            let dw = w * (kappa / z - 0.5) + pre * ds;
            return Some((w, dw, n * pre.norm()));
        }
        if n > prev && k > 2 {
            return None;
        }
        prev = n;
        term = next;
    }
    None
}

/// One Taylor step of `z² w'' + (-z²/4 + κz + ¼ - μ²) w = 0` from `z0` by `t`.
fn taylor_step(kappa: Complex64, mu: Complex64, z0: Complex64, w: Complex64, dw: Complex64, t: Complex64) -> (Complex64, Complex64) {
    let p0 = -0.25 * z0 * z0 + kappa * z0 + (0.25 - mu * mu);
    let p1 = kappa - 0.5 * z0;
    let z2 = z0 * z0;
    // b_n = a_n t^n, the Taylor coefficients scaled by the step
    let mut b: Vec<Complex64> = vec![w, dw * t];
    let (mut val, mut der) = (w + b[1], b[1]);
    for n in 0..200usize {
        let nf = n as f64;
        let bn = b[n];
        let bn1 = b[n + 1];
        let bm1 = if n >= 1 { b[n - 1] } else { c(0.0) };
        let bm2 = if n >= 2 { b[n - 2] } else { c(0.0) };
        let r = z0 * 2.0 * (nf + 1.0) * nf * bn1 / t
            + (nf * (nf - 1.0) + p0) * bn
            + p1 * bm1 * t
            - 0.25 * bm2 * t * t;
        let bn2 = -r * t * t / (z2 * (nf + 2.0) * (nf + 1.0));
        b.push(bn2);
        val += bn2;
        der += bn2 * (nf + 2.0);
        if n > 4 && bn2.norm() < 1e-18 * val.norm() && bn1.norm() < 1e-17 * val.norm() {
            break;
        }
    }
    (val, der / t)
}

/// Non-terminating `W` for `|z|` beyond the series radius.
///
/// With `Re z ≥ 0`, `W` is the dominant solution going inward, so the
/// asymptotic value at a large radius is carried down to `z`. With
/// `Re z < 0` it dominates going outward, so the series value at the
/// series radius is carried up instead.
fn continued(kappa: Complex64, mu: Complex64, z: Complex64, opts: &WhittakerOptions) -> Result<SpecFunResult> {
    let dir = z / z.norm();
    let target = z.norm();
    let (mut r, mut w, mut dw, err);
    if z.re >= 0.0 {
        let mut start = (ASYMPTOTIC_RADIUS + 4.0 * (kappa.norm() + mu.norm()).powi(2)).max(target);
        loop {
            if let Some((w0, dw0, e0)) = asymptotic(kappa, mu, dir * start) {
                (r, w, dw, err) = (start, w0, dw0, e0);
                break;
            }
            start *= 1.5;
            if start > 1e4 {
                return Err(Error::SeriesDivergence { terms: 400, abs_z: start });
            }
        }
    } else {
        r = opts.series_radius;
        let z0 = dir * r;
        let w0 = series_route(kappa, mu, z0, opts)?;
        let w1 = series_route(kappa + 1.0, mu, z0, opts)?;
        // z W'_{κ,μ} = (z/2 - κ) W_{κ,μ} - W_{κ+1,μ}
        w = w0.value;
        dw = ((0.5 * z0 - kappa) * w0.value - w1.value) / z0;
        err = w0.est_error + w1.est_error;
    }
    let mut steps = 0usize;
    while (r - target).abs() > 1e-15 * target {
        // |t| ≤ 2 bounds the e^{|t|/2} cancellation inside one Taylor sum
        let len = (0.35 * r).min(2.0);
        let h = if r > target { -len.min(r - target) } else { len.min(target - r) };
        let (nw, ndw) = taylor_step(kappa, mu, dir * r, w, dw, dir * h);
        (w, dw) = (nw, ndw);
        r += h;
        steps += 1;
    }
    // growth of the carried solution relative to its start is already in w
    let est = err + 1e-15 * (steps as f64 + 1.0) * 4.0 * w.norm();
    SpecFunResult::new(w, est, Method::Asymptotic)
}

/// `W = e^{-z/2} z^{μ+½} (-1)^m m! L_m^{(2μ)}(z)` when `½+μ-κ = -m`.
fn terminating(kappa: Complex64, mu: Complex64, z: Complex64) -> Result<Option<SpecFunResult>> {
    for m_sign in [mu, -mu] {
        let a = 0.5 + m_sign - kappa;
        let Some(k) = as_integer(a) else { continue };
        if k > 0 {
            continue;
        }
        let b = 1.0 + 2.0 * m_sign;
        if as_integer(b).is_some_and(|bi| bi <= 0) {
            continue;
        }
        let m = (-k) as usize;
        let entire = as_integer(m_sign + 0.5).is_some_and(|e| e >= 0);
        if on_branch_cut(z) && !entire {
            return Err(Error::BranchCutEvaluation(z.re));
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let fact: f64 = (1..=m).map(|j| j as f64).product();
        let lag = laguerre_c(m, 2.0 * m_sign, z)?;
        let pre = (-0.5 * z).exp() * cpow(z, m_sign + 0.5);
        let v = finite(pre * lag * (sign * fact), "whittaker_w")?;
        let err = 8.0 * f64::EPSILON * (m as f64 + 1.0) * v.norm().max(pre.norm() * fact);
        return SpecFunResult::new(v, err, Method::Recurrence).map(Some);
    }
    Ok(None)
}

/// `W_{κ,μ}(z)` in the terminating case `½+μ-κ = -m` from the finite Kummer
/// sum `U(-m, b, z) = (-1)^m (b)_m M(-m, b, z)`, independent of the
/// Laguerre recurrence used by [`whittaker_w`].
pub fn whittaker_w_kummer(kappa: Complex64, mu: Complex64, z: Complex64) -> Result<SpecFunResult> {
    let a = 0.5 + mu - kappa;
    let m = match as_integer(a) {
        Some(k) if k <= 0 => (-k) as usize,
        _ => {
            return Err(Error::DomainError(format!(
                "½+μ-κ = {a} is not a nonpositive integer"
            )))
        }
    };
    let b = 1.0 + 2.0 * mu;
    if as_integer(b).is_some_and(|bi| bi <= 0 && (-bi) as usize >= m) {
        return Err(Error::ParameterPole(format!("1+2μ = {b} meets the terminating order")));
    }
    let entire = as_integer(mu + 0.5).is_some_and(|e| e >= 0);
    if on_branch_cut(z) && !entire {
        return Err(Error::BranchCutEvaluation(z.re));
    }
    let mut term = c(1.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    for k in 0..m {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        abs_sum += term.norm();
    }
    let mut poch = c(1.0);
    for k in 0..m {
        poch *= b + k as f64;
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pre = (-0.5 * z).exp() * cpow(z, mu + 0.5) * poch * sign;
    let v = finite(pre * sum, "whittaker_w_kummer")?;
    SpecFunResult::new(v, 8.0 * f64::EPSILON * (m as f64 + 1.0) * pre.norm() * abs_sum, Method::Series)
}

fn rgamma_rel_error(z: Complex64) -> Result<f64> {
    if matches!(as_integer(z), Some(k) if k <= 0) {
        return Ok(0.0);
    }
    Ok(gamma_rel_error(z, ln_gamma(z)?))
}

/// Connection formula
/// `W = Γ(-2μ)/Γ(½-μ-κ) M_{κ,μ} + Γ(2μ)/Γ(½+μ-κ) M_{κ,-μ}`.
fn connection(kappa: Complex64, mu: Complex64, z: Complex64, opts: &WhittakerOptions) -> Result<SpecFunResult> {
    let m_plus = whittaker_m_with(kappa, mu, z, opts)?;
    let m_minus = whittaker_m_with(kappa, -mu, z, opts)?;
    let (lg1, lg2) = (ln_gamma(-2.0 * mu)?, ln_gamma(2.0 * mu)?);
    let (a1, a2) = (0.5 - mu - kappa, 0.5 + mu - kappa);
    let c1 = lg1.exp() * rgamma(a1)?;
    let c2 = lg2.exp() * rgamma(a2)?;
    let t1 = c1 * m_plus.value;
    let t2 = c2 * m_minus.value;
    let v = finite(t1 + t2, "whittaker_w")?;
    // the coefficients carry the gamma rounding, amplified by any cancellation
    let rel1 = gamma_rel_error(-2.0 * mu, lg1) + rgamma_rel_error(a1)?;
    let rel2 = gamma_rel_error(2.0 * mu, lg2) + rgamma_rel_error(a2)?;
    let err = c1.norm() * m_plus.est_error
        + c2.norm() * m_minus.est_error
        + (rel1 + 4.0 * f64::EPSILON) * t1.norm()
        + (rel2 + 4.0 * f64::EPSILON) * t2.norm();
    SpecFunResult::new(v, err, Method::Series)
}

/// Logarithmic series of `U(a, n+1, z)` for integer `n = 2μ ≥ 0`.
fn log_series(kappa: Complex64, mu: Complex64, n: usize, z: Complex64, opts: &WhittakerOptions) -> Result<SpecFunResult> {
    let a = 0.5 + mu - kappa;
    let nf = n as f64;
    let ln_z = z.ln();

    // finite part: (1/Γ(a)) Σ_{k=1}^{n} (k-1)! (1-a+k)_{n-k} / (n-k)! z^{-k}
    let mut finite_part = c(0.0);
    let mut finite_abs = 0.0;
    let ra = rgamma(a)?;
    for k in 1..=n {
        let fk: f64 = (1..k).map(|j| j as f64).product();
        let fnk: f64 = (1..=(n - k)).map(|j| j as f64).product();
        let mut poch = c(1.0);
        for j in 0..(n - k) {
            poch *= 1.0 - a + k as f64 + j as f64;
        }
        let t = ra * poch * (fk / fnk) * z.powi(-(k as i32));
        finite_part += t;
        finite_abs += t.norm();
    }

    // log part, absent when 1/Γ(a-n) vanishes
    let r_an = rgamma(a - nf)?;
    let (log_part, log_abs, tail) = if r_an == c(0.0) {
        (c(0.0), 0.0, 0.0)
    } else {
        let n_fact: f64 = (1..=n).map(|j| j as f64).product();
        let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let pre = r_an * (sign / n_fact);
        let mut psi_a = digamma(a)?;
        let mut psi_1 = c(-EULER_GAMMA);
        let harmonic_n: f64 = (1..=n).map(|j| 1.0 / j as f64).sum();
        let mut psi_n1 = c(-EULER_GAMMA + harmonic_n);
        let mut coef = c(1.0);
        let mut sum = c(0.0);
        let mut abs_sum = 0.0;
        let mut tail = f64::NAN;
        for k in 0..opts.max_terms {
            let kf = k as f64;
            let t = coef * (ln_z + psi_a - psi_1 - psi_n1);
            sum += t;
            abs_sum += t.norm();
            let ratio = (a + kf) * z / ((nf + 1.0 + kf) * (kf + 1.0));
            coef *= ratio;
            psi_a += (a + kf).inv();
            psi_1 += 1.0 / (kf + 1.0);
            psi_n1 += 1.0 / (nf + kf + 1.0);
            let r = ratio.norm();
            if k > 2 && r < 0.5 && t.norm() <= f64::EPSILON * 1e-2 * sum.norm().max(1e-300) {
                tail = t.norm() * r / (1.0 - r);
                break;
            }
        }
        if tail.is_nan() {
            return Err(Error::SeriesDivergence {
                terms: opts.max_terms,
                abs_z: z.norm(),
            });
        }
        (pre * sum, pre.norm() * abs_sum, pre.norm() * tail)
    };

    let u = log_part + finite_part;
    let pre = (-0.5 * z).exp() * cpow(z, mu + 0.5);
    let v = finite(pre * u, "whittaker_w")?;
    let err = pre.norm() * (tail + 16.0 * f64::EPSILON * (log_abs + finite_abs));
    SpecFunResult::new(v, err, Method::Series)
}

/// `W_{κ,μ}(z)` from the Laplace-type integral
/// `z^{μ+½} e^{-z/2} / Γ(μ-κ+½) ∫_0^∞ e^{-zt} t^{μ-κ-½} (1+t)^{μ+κ-½} dt`,
/// with the contour rotated onto `arg t = -arg z`.
///
/// Requires `Re(μ-κ+½) > 0` and `z` off the negative real axis.
pub fn whittaker_w_integral(kappa: Complex64, mu: Complex64, z: Complex64) -> Result<SpecFunResult> {
    let lead = mu - kappa + 0.5;
    if lead.re <= 0.0 {
        return Err(Error::DomainError(format!(
            "integral representation needs Re(μ-κ+½) > 0, got {}",
            lead.re
        )));
    }
    if z == c(0.0) {
        return Err(Error::SingularPoint("W_{κ,μ}(0)".into()));
    }
    if on_branch_cut(z) {
        return Err(Error::BranchCutEvaluation(z.re));
    }
    let phi = z.arg();
    if phi.abs() >= PI {
        return Err(Error::BranchCutEvaluation(z.re));
    }
    let rot = Complex64::from_polar(1.0, -phi);
    let c1 = mu - kappa - 0.5;
    let c2 = mu + kappa - 0.5;
    let r = z.norm();
    let q = exp_sinh(
        |s| {
            let ln_s = s.ln();
            let v = (-r * s + c1 * ln_s).exp() * (c2 * (1.0 + rot * s).ln()).exp();
            Ok(v)
        },
        1e-13,
        1e-300,
    )?;
    // t^{c1} dt = s^{c1} e^{-iφ(c1+1)} ds
    let jac = (Complex64::new(0.0, -phi) * (c1 + 1.0)).exp();
    let pre = cpow(z, mu + 0.5) * (-0.5 * z).exp() * rgamma(lead)? * jac;
    let v = finite(pre * q.value, "whittaker_w_integral")?;
    let err = pre.norm() * q.est_error + 8.0 * f64::EPSILON * v.norm();
    SpecFunResult::new(v, err, Method::Integral)
}
