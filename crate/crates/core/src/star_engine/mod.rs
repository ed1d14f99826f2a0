//! Star products, Moyal brackets and Moyal time evolution of grid data.
//!
//! Sign conventions, fixed here once:
//! - Poisson bracket `{a, b} = a_x b_p - a_p b_x`, so `{x, p} = 1`.
//! - Evolution `∂f/∂t = {H, f}`, i.e. transport along `ẋ = H_p`, `ṗ = -H_x`.
//!   The harmonic oscillator therefore rotates phase space clockwise.
//! - Left star product of a polynomial Weyl symbol `h` with grid data `f`:
//!   `h ⋆ f = Σ_n (iħ/2)^n / n! Σ_r C(n,r) (-1)^r (∂_x^{n-r} ∂_p^r h)(∂_p^{n-r} ∂_x^r f)`,
//!   which is the Bopp shift `h(x + iħ/2 ∂_p, p - iħ/2 ∂_x) f` and terminates
//!   at `n = deg h`.

mod evolve;
mod stencil;

use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::phase_space::{GridSpec, WignerGrid};

pub use evolve::{moyal_evolve, moyal_evolve_series, CFL_LIMIT};
pub use stencil::{fornberg_weights, Boundary, DerivativeScheme, Stencil};

/// Highest total degree a [`PolynomialHamiltonian`] may have.
pub const MAX_DEGREE: usize = 4;

/// Weyl symbol `Σ c_{jk} x^j p^k` of total degree at most [`MAX_DEGREE`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialHamiltonian {
    terms: Vec<(usize, usize, Complex64)>,
}

impl PolynomialHamiltonian {
    pub fn new(terms: Vec<(usize, usize, Complex64)>) -> Result<Self> {
        for &(j, k, c) in &terms {
            if j + k > MAX_DEGREE {
                return Err(Error::InvalidInput(format!(
                    "term x^{j} p^{k} exceeds degree {MAX_DEGREE}"
                )));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite coefficient of x^{j} p^{k}")));
            }
        }
        Ok(Self { terms })
    }

    /// Real-coefficient constructor.
    pub fn real(terms: &[(usize, usize, f64)]) -> Result<Self> {
        Self::new(terms.iter().map(|&(j, k, c)| (j, k, Complex64::new(c, 0.0))).collect())
    }

    /// `(x² + p²)/2`.
    pub fn sho() -> Self {
        Self::real(&[(2, 0, 0.5), (0, 2, 0.5)]).expect("static terms")
    }

    /// `xp`, the symbol of `(x̂p̂ + p̂x̂)/2`.
    pub fn xp() -> Self {
        Self::real(&[(1, 1, 1.0)]).expect("static terms")
    }

    /// `(p² - x²)/2`.
    pub fn hyperbolic() -> Self {
        Self::real(&[(0, 2, 0.5), (2, 0, -0.5)]).expect("static terms")
    }

    pub fn terms(&self) -> &[(usize, usize, Complex64)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| t.2 != Complex64::new(0.0, 0.0))
            .map(|t| t.0 + t.1)
            .max()
            .unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.2.im == 0.0)
    }

    /// `∂_x^a ∂_p^b h` at `(x, p)`.
    pub fn deriv(&self, a: usize, b: usize, x: f64, p: f64) -> Complex64 {
        let falling = |n: usize, k: usize| -> f64 { (0..k).map(|i| (n - i) as f64).product() };
        self.terms
            .iter()
            .filter(|t| t.0 >= a && t.1 >= b)
            .map(|&(j, k, c)| c * falling(j, a) * falling(k, b) * x.powi((j - a) as i32) * p.powi((k - b) as i32))
            .sum()
    }

    pub fn eval(&self, x: f64, p: f64) -> Complex64 {
        self.deriv(0, 0, x, p)
    }
}

/// Complex field on a phase-space lattice, e.g. `h ⋆ f` before it is split
/// into real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    /// Lattice of the stored values (already trimmed).
    pub spec: GridSpec,
    pub values: Vec<Complex64>,
    /// Cells removed from each edge of the input lattice.
    pub trim: usize,
}

impl ComplexGrid {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.spec.np + j]
    }

    pub fn real_part(&self) -> WignerGrid {
        WignerGrid {
            spec: self.spec,
            values: self.values.iter().map(|z| z.re).collect(),
        }
    }

    pub fn imag_part(&self) -> WignerGrid {
        WignerGrid {
            spec: self.spec,
            values: self.values.iter().map(|z| z.im).collect(),
        }
    }
}

pub(crate) fn trimmed_spec(spec: &GridSpec, t: usize) -> Result<GridSpec> {
    let available = (spec.nx.min(spec.np).saturating_sub(1)) / 2;
    if spec.nx < 2 * t + 2 || spec.np < 2 * t + 2 {
        return Err(Error::StencilOutOfBounds { needed: t, available });
    }
    Ok(GridSpec {
        x0: spec.x(t),
        nx: spec.nx - 2 * t,
        p0: spec.p(t),
        np: spec.np - 2 * t,
        ..*spec
    })
}

/// Mixed partial derivatives of grid data, computed on demand.
pub(crate) struct Derivatives<'a> {
    grid: &'a WignerGrid,
    scheme: DerivativeScheme,
    boundary: Boundary,
    cache: HashMap<(usize, usize), Vec<f64>>,
}

impl<'a> Derivatives<'a> {
    pub(crate) fn new(grid: &'a WignerGrid, scheme: DerivativeScheme, boundary: Boundary) -> Self {
        Self {
            grid,
            scheme,
            boundary,
            cache: HashMap::new(),
        }
    }

    /// `∂_x^a ∂_p^b f` on the full lattice.
    pub(crate) fn get(&mut self, a: usize, b: usize) -> &[f64] {
        if !self.cache.contains_key(&(a, b)) {
            let s = self.grid.spec;
            let dx = if a == 0 {
                self.grid.values.clone()
            } else if let Some(v) = self.cache.get(&(a, 0)) {
                v.clone()
            } else {
                let v = stencil::derivative(&self.grid.values, s.nx, s.np, false, a, s.dx, self.scheme, self.boundary);
                self.cache.insert((a, 0), v.clone());
                v
            };
            let v = stencil::derivative(&dx, s.nx, s.np, true, b, s.dp, self.scheme, self.boundary);
            self.cache.insert((a, b), v);
        }
        &self.cache[&(a, b)]
    }
}

fn binomial(n: usize, r: usize) -> f64 {
    (0..r).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `h ⋆ f` with the default fourth-order differences.
pub fn star_apply(h: &PolynomialHamiltonian, f: &WignerGrid) -> Result<ComplexGrid> {
    star_apply_with(h, f, DerivativeScheme::default())
}

/// `h ⋆ f` with an explicit derivative scheme. The result lives on the
/// interior lattice where every stencil fits.
pub fn star_apply_with(h: &PolynomialHamiltonian, f: &WignerGrid, scheme: DerivativeScheme) -> Result<ComplexGrid> {
    scheme.validate()?;
    let deg = h.degree();
    let t = (0..=deg).map(|m| scheme.half_width(m)).max().unwrap_or(0);
    let out_spec = trimmed_spec(&f.spec, t)?;
    let s = f.spec;
    let mut d = Derivatives::new(f, scheme, Boundary::Interior);
    let mut out = vec![Complex64::new(0.0, 0.0); out_spec.len()];
    let ih2 = Complex64::new(0.0, 0.5 * s.hbar);
    for n in 0..=deg {
        let pre = ih2.powu(n as u32) / factorial(n);
        for r in 0..=n {
            let coef = pre * binomial(n, r) * if r % 2 == 0 { 1.0 } else { -1.0 };
            // h carries ∂_x^{n-r} ∂_p^r, f carries ∂_x^r ∂_p^{n-r}
            if !h.terms.iter().any(|t| t.0 >= n - r && t.1 >= r) {
                continue;
            }
            let df = d.get(r, n - r);
            for i in 0..out_spec.nx {
                let gi = i + t;
                let x = s.x(gi);
                for j in 0..out_spec.np {
                    let gj = j + t;
                    let hv = h.deriv(n - r, r, x, s.p(gj));
                    out[i * out_spec.np + j] += coef * hv * df[gi * s.np + gj];
                }
            }
        }
    }
    Ok(ComplexGrid {
        spec: out_spec,
        values: out,
        trim: t,
    })
}

/// Residuals of `h ⋆ f = E f` on the interior, relative to `max |f|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarResidual {
    pub real_res: f64,
    pub imag_res: f64,
}

/// `max |Re(h⋆f - E f)|` and `max |Im(h⋆f - E f)|` over the interior,
/// each divided by `max |f|`.
pub fn star_eigen_residual(h: &PolynomialHamiltonian, e: Complex64, f: &WignerGrid) -> Result<StarResidual> {
    star_eigen_residual_with(h, e, f, DerivativeScheme::default())
}

pub fn star_eigen_residual_with(
    h: &PolynomialHamiltonian,
    e: Complex64,
    f: &WignerGrid,
    scheme: DerivativeScheme,
) -> Result<StarResidual> {
    let hf = star_apply_with(h, f, scheme)?;
    let scale = f.max_abs();
    if scale == 0.0 {
        return Err(Error::InvalidInput("residual of the zero grid is undefined".into()));
    }
    let t = hf.trim;
    let mut re: f64 = 0.0;
    let mut im: f64 = 0.0;
    for i in 0..hf.spec.nx {
        for j in 0..hf.spec.np {
            let r = hf.get(i, j) - e * f.get(i + t, j + t);
            re = re.max(r.re.abs());
            im = im.max(r.im.abs());
        }
    }
    Ok(StarResidual {
        real_res: re / scale,
        imag_res: im / scale,
    })
}

/// Truncated Moyal bracket `(2/ħ) a sin(ħΛ/2) b` for two grids,
/// `Λ = ←∂_x →∂_p - ←∂_p →∂_x`. `order = 1` gives the Poisson bracket,
/// `order = 3` adds `-(ħ²/24) a Λ³ b`. The result is on the interior lattice.
pub fn moyal_bracket(a: &WignerGrid, b: &WignerGrid, order: usize) -> Result<WignerGrid> {
    moyal_bracket_with(a, b, order, DerivativeScheme::default())
}

pub fn moyal_bracket_with(a: &WignerGrid, b: &WignerGrid, order: usize, scheme: DerivativeScheme) -> Result<WignerGrid> {
    scheme.validate()?;
    if order != 1 && order != 3 {
        return Err(Error::InvalidInput(format!("bracket order must be 1 or 3, got {order}")));
    }
    if !a.spec.matches(&b.spec) {
        return Err(Error::GridMismatch(format!("{:?} vs {:?}", a.spec, b.spec)));
    }
    let t = (0..=order).map(|m| scheme.half_width(m)).max().unwrap_or(0);
    let out_spec = trimmed_spec(&a.spec, t)?;
    let s = a.spec;
    let mut da = Derivatives::new(a, scheme, Boundary::Interior);
    let mut db = Derivatives::new(b, scheme, Boundary::Interior);
    let mut out = vec![0.0; out_spec.len()];
    let mut add_term = |n: usize, weight: f64, da: &mut Derivatives, db: &mut Derivatives| {
        for r in 0..=n {
            let c = weight * binomial(n, r) * if r % 2 == 0 { 1.0 } else { -1.0 };
            let fa = da.get(n - r, r).to_vec();
            let fb = db.get(r, n - r);
            for i in 0..out_spec.nx {
                for j in 0..out_spec.np {
                    let k = (i + t) * s.np + j + t;
                    out[i * out_spec.np + j] += c * fa[k] * fb[k];
                }
            }
        }
    };
    add_term(1, 1.0, &mut da, &mut db);
    if order == 3 {
        add_term(3, -s.hbar * s.hbar / 24.0, &mut da, &mut db);
    }
    WignerGrid::new(out_spec, out)
}

/// Restricts a grid to the lattice `spec`, which must be a sub-lattice.
pub fn restrict(f: &WignerGrid, spec: &GridSpec) -> Result<WignerGrid> {
    let oi = (spec.x0 - f.spec.x0) / f.spec.dx;
    let oj = (spec.p0 - f.spec.p0) / f.spec.dp;
    let (ri, rj) = (oi.round(), oj.round());
    let aligned = (oi - ri).abs() < 1e-9
        && (oj - rj).abs() < 1e-9
        && ri >= 0.0
        && rj >= 0.0
        && (spec.dx - f.spec.dx).abs() < 1e-12 * f.spec.dx
        && (spec.dp - f.spec.dp).abs() < 1e-12 * f.spec.dp
        && ri as usize + spec.nx <= f.spec.nx
        && rj as usize + spec.np <= f.spec.np;
    if !aligned {
        return Err(Error::GridMismatch("target is not a sub-lattice".into()));
    }
    let (ri, rj) = (ri as usize, rj as usize);
    let mut v = Vec::with_capacity(spec.len());
    for i in 0..spec.nx {
        v.extend_from_slice(&f.row(i + ri)[rj..rj + spec.np]);
    }
    WignerGrid::new(*spec, v)
}
