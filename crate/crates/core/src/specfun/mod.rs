//! Special functions: Hermite and Laguerre polynomials, the complex gamma
//! and digamma functions, Whittaker `M` and `W`, and the table integrals the
//! phase-space formulas rely on.
//!
//! Each routine that has an integral representation also exposes a
//! quadrature companion so the closed forms can be checked independently.

mod gamma;
mod gr;
mod orthopoly;
mod whittaker;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use gamma::{digamma, gamma_complex, ln_gamma, rgamma};
pub use gr::{gr_7_377, gr_7_377_mass, gr_7_377_quadrature, gr_7_414_6, gr_7_414_6_quadrature};
pub use orthopoly::{hermite, hermite_c, laguerre, laguerre_c, POLY_CEILING};
pub use whittaker::{
    whittaker_m, whittaker_m_with, whittaker_w, whittaker_w_integral, whittaker_w_kummer, whittaker_w_with,
    WhittakerOptions,
};

/// Complex argument or value of a special function.
pub type ComplexValue = Complex64;

/// How a special-function value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Recurrence,
    Series,
    Integral,
    Asymptotic,
}

/// A special-function value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecFunResult {
    pub value: ComplexValue,
    pub est_error: f64,
    pub method: Method,
}

impl SpecFunResult {
    pub(crate) fn new(value: ComplexValue, est_error: f64, method: Method) -> Result<Self> {
        let value = finite(value, "special function")?;
        Ok(Self {
            value,
            est_error: est_error.abs(),
            method,
        })
    }
}

pub(crate) fn finite(z: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow { what })
    }
}

/// Returns `Some(k)` when `z` is (numerically) the real integer `k`.
pub(crate) fn as_integer(z: ComplexValue) -> Option<i64> {
    if z.im != 0.0 {
        return None;
    }
    let r = z.re.round();
    ((z.re - r).abs() <= 1e-12 * r.abs().max(1.0) && r.abs() < 1e15).then_some(r as i64)
}
