//! Closed-form states of the three model systems.
//!
//! `sho` is fully normalized. `xp` and `hyperbolic` Wigner functions are
//! shape functions whose overall constant is left unfixed.

pub mod hyperbolic;
pub mod sho;
pub mod xp;

pub use hyperbolic::*;
pub use sho::*;
pub use xp::*;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{AnalyticTag, GridSpec, Wavefunction};
use crate::phase_space::WignerGrid;
use crate::star_engine::{star_eigen_residual_with, DerivativeScheme, PolynomialHamiltonian, StarResidual};

/// Tolerance for a tagged wavefunction against its closed form.
pub const TAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Sho,
    Xp,
    Hyperbolic,
}

impl std::str::FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sho" => Ok(ModelKind::Sho),
            "xp" => Ok(ModelKind::Xp),
            "hyperbolic" => Ok(ModelKind::Hyperbolic),
            other => Err(Error::InvalidInput(format!("unknown model {other:?}"))),
        }
    }
}

/// A model together with its quantum number.
///
/// `n` is the level for `sho` and `hyperbolic`; `energy` is used by `xp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    pub energy: f64,
    pub hbar: f64,
}

impl ModelSpec {
    pub fn sho(n: usize) -> Self {
        ModelSpec { kind: ModelKind::Sho, n, energy: n as f64 + 0.5, hbar: 1.0 }
    }

    pub fn xp(energy: f64) -> Self {
        ModelSpec { kind: ModelKind::Xp, n: 0, energy, hbar: 1.0 }
    }

    pub fn hyperbolic(n: usize) -> Self {
        ModelSpec { kind: ModelKind::Hyperbolic, n, energy: 0.0, hbar: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return Err(Error::InvalidInput(format!("ħ must be positive, got {}", self.hbar)));
        }
        if !self.energy.is_finite() {
            return Err(Error::InvalidInput("energy must be finite".into()));
        }
        if self.kind == ModelKind::Sho && self.n > SHO_CEILING {
            return Err(Error::OverflowCeiling { order: self.n, ceiling: SHO_CEILING });
        }
        Ok(())
    }

    pub fn hamiltonian(&self) -> PolynomialHamiltonian {
        match self.kind {
            ModelKind::Sho => PolynomialHamiltonian::sho(),
            ModelKind::Xp => PolynomialHamiltonian::xp(),
            ModelKind::Hyperbolic => PolynomialHamiltonian::hyperbolic(),
        }
    }

    /// Closed-form Wigner grid. For `xp` this is the real part on the
    /// minimizing branch; the other two are real already.
    pub fn wigner_grid(&self, spec: &GridSpec) -> Result<WignerGrid> {
        self.validate()?;
        match self.kind {
            ModelKind::Sho => sho_wigner_grid(self.n, spec),
            ModelKind::Xp => Ok(xp_wigner_grids(self.energy, spec)?.0),
            ModelKind::Hyperbolic => hyperbolic_wigner_grid(self.n, spec),
        }
    }
}

/// Largest deviation of a tagged wavefunction from its closed form.
///
/// Fails with `InvalidInput` if the deviation exceeds [`TAG_TOL`] relative
/// to `max |ψ|`, and with `DomainError` if an `xp` or `hyperbolic` tag
/// covers `x ≤ 0`. Untagged wavefunctions give `0`.
pub fn check_analytic_tag(psi: &Wavefunction) -> Result<f64> {
    let Some(tag) = psi.analytic_tag else { return Ok(0.0) };
    let eval = |x: f64| -> Result<Complex64> {
        match tag {
            AnalyticTag::ShoN { n } => Ok(Complex64::new(sho_eigenfunction(n, x)?, 0.0)),
            AnalyticTag::XpE { energy } => xp_eigenfunction(energy, x),
            AnalyticTag::HyperbolicE { energy } => hyperbolic_eigenfunction(energy, x),
        }
    };
    let scale = psi.samples.iter().fold(0.0f64, |m, s| m.max(s.norm())).max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for (k, s) in psi.samples.iter().enumerate() {
        worst = worst.max((eval(psi.x(k))? - s).norm());
    }
    if worst > TAG_TOL * scale {
        return Err(Error::InvalidInput(format!(
            "samples deviate from {tag:?} by {worst:e}, above {TAG_TOL:e} relative"
        )));
    }
    Ok(worst)
}

/// Star-eigenvalue residuals of the model's closed-form grid, with
/// eighth-order differences.
///
/// Only `sho` is an exact eigenfunction, so its residual tests both parts.
/// The shape functions of `xp` and `hyperbolic` solve the imaginary
/// (transport) part only; their `real_res` is reported but not meaningful.
pub fn model_star_residual(model: &ModelSpec, spec: &GridSpec) -> Result<StarResidual> {
    let f = model.wigner_grid(spec)?;
    let e = match model.kind {
        ModelKind::Sho => model.n as f64 + 0.5,
        _ => model.energy,
    };
    star_eigen_residual_with(
        &model.hamiltonian(),
        Complex64::new(e, 0.0),
        &f,
        DerivativeScheme::FiniteDifference { order: 8 },
    )
}
