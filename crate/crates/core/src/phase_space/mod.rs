//! Phase-space grids, the numerical Wigner transform, marginals and
//! expectation values.
//!
//! The Wigner function is normalized as
//! `f(x,p) = 1/(πħ) ∫ ψ*(x+y) ψ(x-y) e^{2ipy/ħ} dy`, so that `∬ f = 1`.
//! Grids are stored row-major with the `x` index major:
//! `values[i * np + j] = f(x0 + i dx, p0 + j dp)`.

pub mod axioms;
mod io;
mod transform;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::trapezoid;

pub use io::{read_grid, write_grid, GridFormat};
pub use transform::{wigner_transform, wigner_transform_diagnostic, TransformDiagnostic, DECAY_TOL, IMAG_TOL};

/// A point `(x, p)` of phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub x: f64,
    pub p: f64,
}

impl PhaseSpacePoint {
    pub fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }
}

/// Metadata of a rectangular `(x, p)` lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x0: f64,
    pub dx: f64,
    pub nx: usize,
    pub p0: f64,
    pub dp: f64,
    pub np: usize,
    pub hbar: f64,
}

impl GridSpec {
    /// Square grid of `n × n` points covering `[-extent, extent]²`, `ħ = 1`.
    pub fn square(n: usize, extent: f64) -> Self {
        let d = 2.0 * extent / (n as f64 - 1.0);
        Self {
            x0: -extent,
            dx: d,
            nx: n,
            p0: -extent,
            dp: d,
            np: n,
            hbar: 1.0,
        }
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.dx > 0.0
            && self.dp > 0.0
            && self.hbar > 0.0
            && self.nx >= 2
            && self.np >= 2
            && [self.x0, self.dx, self.p0, self.dp, self.hbar].iter().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("degenerate grid metadata {self:?}")))
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p0 + j as f64 * self.dp
    }

    pub fn len(&self) -> usize {
        self.nx * self.np
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same lattice to within `1e-12` relative in every field.
    pub fn matches(&self, other: &GridSpec) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
        self.nx == other.nx
            && self.np == other.np
            && close(self.x0, other.x0)
            && close(self.dx, other.dx)
            && close(self.p0, other.p0)
            && close(self.dp, other.dp)
            && close(self.hbar, other.hbar)
    }

    fn require_match(&self, other: &GridSpec) -> Result<()> {
        if self.matches(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

/// Real field on a phase-space lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerGrid {
    #[serde(flatten)]
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl WignerGrid {
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        spec.validate()?;
        if values.len() != spec.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a {}x{} grid",
                values.len(),
                spec.nx,
                spec.np
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite grid value {v}")));
        }
        Ok(Self { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            spec,
            values: vec![0.0; spec.len()],
        }
    }

    /// Samples `f(x, p)` on every lattice point.
    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(spec.len());
        for i in 0..spec.nx {
            for j in 0..spec.np {
                values.push(f(spec.x(i), spec.p(j)));
            }
        }
        Self::new(spec, values)
    }

    /// Fallible variant of [`WignerGrid::from_fn`].
    pub fn try_from_fn(spec: GridSpec, mut f: impl FnMut(f64, f64) -> Result<f64>) -> Result<Self> {
        let mut values = Vec::with_capacity(spec.len());
        for i in 0..spec.nx {
            for j in 0..spec.np {
                values.push(f(spec.x(i), spec.p(j))?);
            }
        }
        Self::new(spec, values)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.spec.np + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.spec.np..(i + 1) * self.spec.np]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// L∞ distance to a grid on the same lattice.
    pub fn max_abs_diff(&self, other: &WignerGrid) -> Result<f64> {
        self.spec.require_match(&other.spec)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            spec: self.spec,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}

/// Wavefunction sampled on a uniform lattice `x0 + k dx`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wavefunction {
    pub samples: Vec<Complex64>,
    pub x0: f64,
    pub dx: f64,
    pub analytic_tag: Option<AnalyticTag>,
}

/// Which closed-form state a sampled wavefunction came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnalyticTag {
    ShoN { n: usize },
    XpE { energy: f64 },
    HyperbolicE { energy: f64 },
}

/// Minimum number of samples a wavefunction must carry.
pub const MIN_SAMPLES: usize = 16;

impl Wavefunction {
    pub fn new(samples: Vec<Complex64>, x0: f64, dx: f64) -> Result<Self> {
        if !(dx > 0.0) || !dx.is_finite() || !x0.is_finite() {
            return Err(Error::InvalidInput(format!("bad lattice x0={x0} dx={dx}")));
        }
        if samples.len() < MIN_SAMPLES {
            return Err(Error::InvalidInput(format!(
                "{} samples, need at least {MIN_SAMPLES}",
                samples.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite wavefunction sample".into()));
        }
        Ok(Self {
            samples,
            x0,
            dx,
            analytic_tag: None,
        })
    }

    /// Samples `f` at `x0 + k dx` for `k < n`.
    pub fn sample(x0: f64, dx: f64, n: usize, mut f: impl FnMut(f64) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(|k| f(x0 + k as f64 * dx)).collect(), x0, dx)
    }

    /// Samples `f` on a lattice that contains every `x` of `spec`, refined
    /// `refine` times and extended to cover `[-half_width, half_width]`.
    pub fn sample_for_grid(
        spec: &GridSpec,
        refine: usize,
        half_width: f64,
        f: impl FnMut(f64) -> Complex64,
    ) -> Result<Self> {
        let dx = spec.dx / refine.max(1) as f64;
        let below = ((spec.x0 + half_width) / dx).ceil().max(0.0) as usize;
        let top = spec.x(spec.nx - 1);
        let above = ((half_width - top) / dx).ceil().max(0.0) as usize;
        let x0 = spec.x0 - below as f64 * dx;
        let n = below + (spec.nx - 1) * refine.max(1) + above + 1;
        Self::sample(x0, dx, n, f)
    }

    pub fn with_tag(mut self, tag: AnalyticTag) -> Self {
        self.analytic_tag = Some(tag);
        self
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.dx
    }

    /// `∫ |ψ|² dx` by the trapezoid rule.
    pub fn norm_sqr(&self) -> f64 {
        let d: Vec<f64> = self.samples.iter().map(|z| z.norm_sqr()).collect();
        trapezoid(&d, self.dx)
    }

    /// `|ψ(x)|²` on the sample lattice.
    pub fn density(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// `∫ f dp` at every lattice `x`.
pub fn marginal_x(f: &WignerGrid) -> Vec<f64> {
    (0..f.spec.nx).map(|i| trapezoid(f.row(i), f.spec.dp)).collect()
}

/// `∫ f dx` at every lattice `p`.
pub fn marginal_p(f: &WignerGrid) -> Vec<f64> {
    let mut col = vec![0.0; f.spec.nx];
    (0..f.spec.np)
        .map(|j| {
            for (i, c) in col.iter_mut().enumerate() {
                *c = f.get(i, j);
            }
            trapezoid(&col, f.spec.dx)
        })
        .collect()
}

/// `∬ f dx dp` by the 2D trapezoid rule.
pub fn total_probability(f: &WignerGrid) -> f64 {
    trapezoid(&marginal_x(f), f.spec.dx)
}

/// `∬ a_w f dx dp`.
pub fn expectation(a_w: &WignerGrid, f: &WignerGrid) -> Result<f64> {
    a_w.spec.require_match(&f.spec)?;
    let prod: Vec<f64> = a_w.values.iter().zip(&f.values).map(|(a, b)| a * b).collect();
    let g = WignerGrid {
        spec: f.spec,
        values: prod,
    };
    Ok(total_probability(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn gaussian(spec: GridSpec) -> WignerGrid {
        WignerGrid::from_fn(spec, |x, p| (-(x * x + p * p)).exp() / PI).unwrap()
    }

    #[test]
    fn marginals_of_ground_state() {
        let spec = GridSpec::square(201, 7.0);
        let f = gaussian(spec);
        let mx = marginal_x(&f);
        let mp = marginal_p(&f);
        for i in 0..spec.nx {
            let x = spec.x(i);
            assert!((mx[i] - (-x * x).exp() / PI.sqrt()).abs() < 1e-10);
            assert!((mp[i] - (-x * x).exp() / PI.sqrt()).abs() < 1e-10);
        }
        assert!((total_probability(&f) - 1.0).abs() < 1e-10);
        assert!((total_probability(&f.scaled(2.0)) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn zero_grid_has_zero_marginals() {
        let f = WignerGrid::zeros(GridSpec::square(16, 1.0));
        assert!(marginal_x(&f).iter().all(|v| *v == 0.0));
        assert!(marginal_p(&f).iter().all(|v| *v == 0.0));
    }

    #[test]
    fn expectation_values_of_ground_state() {
        let spec = GridSpec::square(201, 7.0);
        let f = gaussian(spec);
        let one = WignerGrid::from_fn(spec, |_, _| 1.0).unwrap();
        let h = WignerGrid::from_fn(spec, |x, p| 0.5 * (x * x + p * p)).unwrap();
        let xg = WignerGrid::from_fn(spec, |x, _| x).unwrap();
        assert!((expectation(&one, &f).unwrap() - 1.0).abs() < 1e-10);
        assert!((expectation(&h, &f).unwrap() - 0.5).abs() < 1e-10);
        assert!(expectation(&xg, &f).unwrap().abs() < 1e-14);
        let other = WignerGrid::zeros(GridSpec::square(200, 7.0));
        assert!(matches!(expectation(&other, &f), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn wavefunction_validation() {
        assert!(Wavefunction::new(vec![Complex64::new(0.0, 0.0); 8], 0.0, 0.1).is_err());
        assert!(Wavefunction::new(vec![Complex64::new(0.0, 0.0); 16], 0.0, -0.1).is_err());
        assert!(WignerGrid::new(GridSpec::square(4, 1.0), vec![0.0; 15]).is_err());
    }

    #[test]
    fn lattice_for_grid_contains_grid_points() {
        let spec = GridSpec::square(51, 3.0);
        let psi = Wavefunction::sample_for_grid(&spec, 2, 5.0, |_| Complex64::new(0.0, 0.0)).unwrap();
        assert!(psi.x0 <= -5.0 && psi.x(psi.len() - 1) >= 5.0);
        let off = (spec.x0 - psi.x0) / psi.dx;
        assert!((off - off.round()).abs() < 1e-9);
    }
}
