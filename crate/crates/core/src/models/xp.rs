use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::phase_space::{GridSpec, PhaseSpacePoint, WignerGrid};
use crate::quadrature::exp_sinh;
use crate::specfun::{gamma_complex, ln_gamma, rgamma, whittaker_w};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `x^{iE}` for `x > 0`. Not normalizable.
pub fn xp_eigenfunction(energy: f64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::DomainError(format!("xp eigenfunction needs x > 0, got {x}")));
    }
    Ok(Complex64::from_polar(1.0, energy * x.ln()))
}

/// Branch of `(-1)^{-iE} = e^{σπE}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseBranch {
    /// `-1 = e^{iπ}`, giving `e^{πE}`.
    Plus,
    /// `-1 = e^{-iπ}`, giving `e^{-πE}`.
    Minus,
}

impl PhaseBranch {
    pub fn factor(self, energy: f64) -> f64 {
        match self {
            Self::Plus => (PI * energy).exp(),
            Self::Minus => (-PI * energy).exp(),
        }
    }

    /// The branch with the smaller modulus, hence the smaller `|Im f|`.
    pub fn minimizing(energy: f64) -> Self {
        if energy >= 0.0 {
            Self::Minus
        } else {
            Self::Plus
        }
    }
}

/// `(-1)^{-iE} e^{-2ixp} / (4ixp) · Γ(1-iE) · W_{iE,1/2}(4ixp)` on a given branch.
pub fn xp_wigner_on_branch(energy: f64, pt: PhaseSpacePoint, branch: PhaseBranch) -> Result<Complex64> {
    let xp = pt.x * pt.p;
    if xp == 0.0 {
        return Err(Error::SingularPoint("xp Wigner function at xp = 0".into()));
    }
    let z = Complex64::new(0.0, 4.0 * xp);
    let w = whittaker_w(Complex64::new(0.0, energy), c(0.5), z)?.value;
    let g = gamma_complex(Complex64::new(1.0, -energy))?.value;
    let phase = Complex64::new(0.0, -2.0 * xp).exp();
    Ok(phase / z * g * w * branch.factor(energy))
}

/// xp Wigner value with its reality diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XpWignerValue {
    /// Value on the branch minimizing `|Im|`.
    pub value: Complex64,
    pub branch: PhaseBranch,
    /// Value on the other branch.
    pub alternate: Complex64,
    /// `|Im f| / |f|`, which does not depend on the branch.
    pub rel_imag: f64,
}

pub fn xp_wigner(energy: f64, pt: PhaseSpacePoint) -> Result<XpWignerValue> {
    let branch = PhaseBranch::minimizing(energy);
    let value = xp_wigner_on_branch(energy, pt, branch)?;
    let other = match branch {
        PhaseBranch::Plus => PhaseBranch::Minus,
        PhaseBranch::Minus => PhaseBranch::Plus,
    };
    let alternate = value * (other.factor(energy) / branch.factor(energy));
    Ok(XpWignerValue {
        value,
        branch,
        alternate,
        rel_imag: value.im.abs() / value.norm(),
    })
}

/// Imaginary-part diagnostic over a set of points for both branches.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub energy: f64,
    pub plus_max_imag: f64,
    pub minus_max_imag: f64,
    pub chosen: PhaseBranch,
    pub max_rel_imag: f64,
}

pub fn xp_branch_report(energy: f64, points: &[PhaseSpacePoint]) -> Result<BranchReport> {
    let mut plus: f64 = 0.0;
    let mut minus: f64 = 0.0;
    let mut rel: f64 = 0.0;
    for &pt in points {
        let v = xp_wigner(energy, pt)?;
        let (pv, mv) = match v.branch {
            PhaseBranch::Plus => (v.value, v.alternate),
            PhaseBranch::Minus => (v.alternate, v.value),
        };
        plus = plus.max(pv.im.abs());
        minus = minus.max(mv.im.abs());
        rel = rel.max(v.rel_imag);
    }
    Ok(BranchReport {
        energy,
        plus_max_imag: plus,
        minus_max_imag: minus,
        chosen: if plus <= minus { PhaseBranch::Plus } else { PhaseBranch::Minus },
        max_rel_imag: rel,
    })
}

/// `∫_0^∞ e^{-zu} u^{-iE} (1+u)^{iE} du` with `z = 4ixp`, on the ray
/// `u = s e^{-i arg z}` where the exponential decays.
fn xp_laplace_integral(energy: f64, xp: f64) -> Result<Complex64> {
    if xp == 0.0 {
        return Err(Error::SingularPoint("integral representation at xp = 0".into()));
    }
    let z = Complex64::new(0.0, 4.0 * xp);
    let phi = z.arg();
    let r = z.norm();
    let rot = Complex64::from_polar(1.0, -phi);
    let ie = Complex64::new(0.0, energy);
    let q = exp_sinh(
        |s| {
            // u^{-iE} with arg u = -φ
            let ln_u = Complex64::new(s.ln(), -phi);
            let v = (-r * s - ie * ln_u + ie * (1.0 + rot * s).ln()).exp();
            Ok(v)
        },
        1e-13,
        1e-300,
    )?;
    Ok(rot * q.value)
}

/// `W_{iE,1/2}(4ixp)` from its Laplace-type integral
/// `z e^{-z/2} / Γ(1-iE) ∫_0^∞ e^{-zu} u^{-iE} (1+u)^{iE} du`, `z = 4ixp`.
pub fn xp_integral_representation(energy: f64, x: f64, p: f64) -> Result<Complex64> {
    let xp = x * p;
    let z = Complex64::new(0.0, 4.0 * xp);
    let i = xp_laplace_integral(energy, xp)?;
    Ok(z * (-0.5 * z).exp() * rgamma(Complex64::new(1.0, -energy))? * i)
}

/// The same representation without the leading factor `z = 4ixp`.
pub fn xp_integral_representation_without_prefactor(energy: f64, x: f64, p: f64) -> Result<Complex64> {
    let xp = x * p;
    let z = Complex64::new(0.0, 4.0 * xp);
    let i = xp_laplace_integral(energy, xp)?;
    Ok((-0.5 * z).exp() * rgamma(Complex64::new(1.0, -energy))? * i)
}

/// `Γ(ν)Γ(ν+1)/Γ(ν-κ+1)`.
pub fn gr_7_622_11(nu: f64, kappa: f64) -> Result<f64> {
    let v = ln_gamma(c(nu))? + ln_gamma(c(nu + 1.0))? - ln_gamma(c(nu - kappa + 1.0))?;
    let sign = [nu, nu + 1.0, nu - kappa + 1.0]
        .iter()
        .map(|&a| if a < 0.0 && (a.floor() as i64) % 2 != 0 { -1.0 } else { 1.0 })
        .product::<f64>();
    Ok(sign * v.re.exp())
}

// W_{κ,1/2}(x) for real x > 0; beyond the series range the two-term
// asymptotic form is used, where the integrand is below 1e-18 anyway.
fn whittaker_w_half_real(kappa: f64, x: f64) -> Result<f64> {
    if x <= 50.0 {
        return Ok(whittaker_w(c(kappa), c(0.5), c(x))?.value.re);
    }
    let lead = (-0.5 * x).exp() * x.powf(kappa);
    Ok(lead * (1.0 + (0.25 - (kappa - 0.5).powi(2)) / x))
}

/// `∫_0^∞ e^{-x/2} x^{ν-1} W_{κ,1/2}(x) dx` by exp-sinh quadrature.
pub fn gr_7_622_11_quadrature(nu: f64, kappa: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::DomainError(format!("needs ν > 0, got {nu}")));
    }
    let q = exp_sinh(
        |x| Ok(c((-0.5 * x).exp() * x.powf(nu - 1.0) * whittaker_w_half_real(kappa, x)?)),
        1e-13,
        1e-300,
    )?;
    Ok(q.value.re)
}

/// `W_{iE,0}(4ixp) / √(xp)`, a solution of the real part of the xp
/// star-eigenvalue equation `(xp + ¼ ∂_x∂_p) f = E f`.
pub fn xp_star_solution(energy: f64, x: f64, p: f64) -> Result<Complex64> {
    let xp = x * p;
    if xp == 0.0 {
        return Err(Error::SingularPoint("xp star solution at xp = 0".into()));
    }
    let z = Complex64::new(0.0, 4.0 * xp);
    Ok(whittaker_w(Complex64::new(0.0, energy), c(0.0), z)?.value / c(xp).sqrt())
}

/// Real and imaginary parts of [`xp_wigner`] on a lattice avoiding `xp = 0`.
pub fn xp_wigner_grids(energy: f64, spec: &GridSpec) -> Result<(WignerGrid, WignerGrid)> {
    let branch = PhaseBranch::minimizing(energy);
    let mut vals = Vec::with_capacity(spec.len());
    for i in 0..spec.nx {
        for j in 0..spec.np {
            vals.push(xp_wigner_on_branch(energy, PhaseSpacePoint::new(spec.x(i), spec.p(j)), branch)?);
        }
    }
    Ok((
        WignerGrid::new(*spec, vals.iter().map(|v| v.re).collect())?,
        WignerGrid::new(*spec, vals.iter().map(|v| v.im).collect())?,
    ))
}
