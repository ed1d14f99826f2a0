//! Truncated Fock-space representation of the boson algebra.
//!
//! Operator identities hold exactly only in infinite dimension. Truncation
//! corrupts the top levels and the damage leaks downward through products
//! and exponentials, so every residual is measured on a leading block.
//! The default block is the lowest `N/4` levels: squeezing at `r = 1/2`
//! carries the edge error about `N/2` levels down.

mod matrix;

pub use matrix::{expm, expm_taylor, CMatrix};

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::gauss_hermite;
use crate::specfun::laguerre;

/// Smallest accepted truncation.
pub const MIN_DIM: usize = 8;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Ladder operators on the span of `|0⟩ … |N-1⟩`.
#[derive(Debug, Clone)]
pub struct FockSpace {
    dim: usize,
    block: usize,
    strict: bool,
    pub a: CMatrix,
    pub adag: CMatrix,
    pub number: CMatrix,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < MIN_DIM {
            return Err(Error::InvalidInput(format!("Fock dimension must be ≥ {MIN_DIM}, got {dim}")));
        }
        let a = CMatrix::from_fn(dim, |i, j| if j == i + 1 { c((j as f64).sqrt()) } else { ZERO });
        let adag = a.dagger();
        let number = CMatrix::from_fn(dim, |i, j| if i == j { c(i as f64) } else { ZERO });
        Ok(FockSpace {
            dim,
            block: dim / 4,
            strict: true,
            a,
            adag,
            number,
        })
    }

    /// Measure residuals on the leading `block` levels.
    pub fn with_block(mut self, block: usize) -> Result<Self> {
        if block == 0 || block > self.dim {
            return Err(Error::InvalidInput(format!("block must be in 1..={}, got {block}", self.dim)));
        }
        self.block = block;
        Ok(self)
    }

    /// Proceed past truncation heuristics instead of failing.
    pub fn lenient(mut self) -> Self {
        self.strict = false;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim)
    }

    /// `(-1)^N`.
    pub fn parity(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |i, j| {
            if i != j {
                ZERO
            } else if i % 2 == 0 {
                c(1.0)
            } else {
                c(-1.0)
            }
        })
    }

    fn heuristic(&self, ok: bool, what: String) -> Result<()> {
        if ok || !self.strict {
            Ok(())
        } else {
            Err(Error::TruncationWarning(what))
        }
    }

    /// `|α|² ≤ N/4`.
    pub fn check_alpha(&self, alpha: Complex64) -> Result<()> {
        self.heuristic(
            alpha.norm_sqr() <= self.dim as f64 / 4.0,
            format!("|α|² = {} exceeds N/4 = {}", alpha.norm_sqr(), self.dim as f64 / 4.0),
        )
    }

    /// `r ≤ 1`.
    pub fn check_squeeze(&self, r: f64) -> Result<()> {
        self.heuristic(r.abs() <= 1.0, format!("squeeze |r| = {} exceeds 1", r.abs()))
    }

    /// `max |[a, a†] - I|` on the first `N-1` diagonal entries and all
    /// off-diagonal ones; the last diagonal entry is `1 - N` by truncation.
    pub fn commutator_defect(&self) -> f64 {
        let comm = &(&self.a * &self.adag) - &(&self.adag * &self.a);
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j && i == self.dim - 1 {
                    continue;
                }
                let want = if i == j { c(1.0) } else { ZERO };
                worst = worst.max((comm[(i, j)] - want).norm());
            }
        }
        worst
    }
}

/// `exp(αa† - α*a)`.
pub fn displacement_op(alpha: Complex64, fock: &FockSpace) -> Result<CMatrix> {
    fock.check_alpha(alpha)?;
    let gen = &fock.adag.scale(alpha) - &fock.a.scale(alpha.conj());
    expm(&gen)
}

/// `⟨m|D(α)|n⟩ = √(n!/m!) α^{m-n} e^{-|α|²/2} L_n^{(m-n)}(|α|²)` for
/// `m ≥ n`, and `√(m!/n!) (-α*)^{n-m} e^{-|α|²/2} L_m^{(n-m)}(|α|²)` otherwise.
pub fn displacement_element(m: usize, n: usize, alpha: Complex64) -> Result<Complex64> {
    let x = alpha.norm_sqr();
    let (lo, hi, base) = if m >= n { (n, m, alpha) } else { (m, n, -alpha.conj()) };
    let ratio: f64 = ((lo + 1)..=hi).map(|k| 1.0 / (k as f64).sqrt()).product();
    let lag = laguerre(lo, (hi - lo) as f64, x)?;
    Ok(base.powu((hi - lo) as u32) * (ratio * (-0.5 * x).exp() * lag))
}

/// `exp(½(z* a² - z a†²))` with `z = r e^{iθ}`.
pub fn squeeze_op(r: f64, theta: f64, fock: &FockSpace) -> Result<CMatrix> {
    fock.check_squeeze(r)?;
    let z = Complex64::from_polar(r, theta);
    let a2 = &fock.a * &fock.a;
    let ad2 = &fock.adag * &fock.adag;
    let gen = (&a2.scale(z.conj()) - &ad2.scale(z)).scale(c(0.5));
    expm(&gen)
}

/// `‖D(α)D(α') - e^{½(αα'* - α*α')} D(α+α')‖` on the block.
pub fn composition_check(alpha: Complex64, alpha2: Complex64, fock: &FockSpace) -> Result<f64> {
    fock.check_alpha(alpha + alpha2)?;
    let lhs = &displacement_op(alpha, fock)? * &displacement_op(alpha2, fock)?;
    let phase = (0.5 * (alpha * alpha2.conj() - alpha.conj() * alpha2)).exp();
    let rhs = displacement_op(alpha + alpha2, fock)?.scale(phase);
    Ok(lhs.block_diff(&rhs, fock.block))
}

/// `‖D(α)D(β) - e^{αβ* - βα*} D(β)D(α)‖` on the block.
///
/// The exponent carries no factor ½: it is the ratio of the two
/// composition phases `e^{±½(αβ* - α*β)}`.
pub fn braiding_check(alpha: Complex64, beta: Complex64, fock: &FockSpace) -> Result<f64> {
    let da = displacement_op(alpha, fock)?;
    let db = displacement_op(beta, fock)?;
    let phase = (alpha * beta.conj() - beta * alpha.conj()).exp();
    Ok((&da * &db).block_diff(&(&db * &da).scale(phase), fock.block))
}

/// `‖D(α) - e^{-|α|²/2} e^{αa†} e^{-α*a}‖` on the block. The two normal
/// ordered factors are computed with the Taylor path.
pub fn bch_check(alpha: Complex64, fock: &FockSpace) -> Result<f64> {
    let d = displacement_op(alpha, fock)?;
    let up = expm_taylor(&fock.adag.scale(alpha))?;
    let down = expm_taylor(&fock.a.scale(-alpha.conj()))?;
    let rhs = (&up * &down).scale(c((-0.5 * alpha.norm_sqr()).exp()));
    Ok(d.block_diff(&rhs, fock.block))
}

/// `‖S†aS - (a cosh r - a† e^{iθ} sinh r)‖` on the block.
pub fn squeeze_conjugation_check(r: f64, theta: f64, fock: &FockSpace) -> Result<f64> {
    let s = squeeze_op(r, theta, fock)?;
    let lhs = &(&s.dagger() * &fock.a) * &s;
    let rhs = &fock.a.scale(c(r.cosh())) - &fock.adag.scale(Complex64::from_polar(r.sinh(), theta));
    Ok(lhs.block_diff(&rhs, fock.block))
}

/// `K₊ = a†²/2`, `K₋ = a²/2`, `K₀ = ½(1 + 2a†a)`.
pub fn su11_generators(fock: &FockSpace) -> (CMatrix, CMatrix, CMatrix) {
    let kp = (&fock.adag * &fock.adag).scale(c(0.5));
    let km = (&fock.a * &fock.a).scale(c(0.5));
    let k0 = &fock.identity().scale(c(0.5)) + &fock.number;
    (kp, km, k0)
}

fn commutator(x: &CMatrix, y: &CMatrix) -> CMatrix {
    &(x * y) - &(y * x)
}

/// Residuals of `[K₋, K₊] = K₀` and `[K₀, K±] = ±2K±` on the leading
/// `b` levels.
pub fn su11_residuals_on(fock: &FockSpace, b: usize) -> (f64, f64) {
    let (kp, km, k0) = su11_generators(fock);
    let first = commutator(&km, &kp).block_diff(&k0, b);
    let plus = commutator(&k0, &kp).block_diff(&kp.scale(c(2.0)), b);
    let minus = commutator(&k0, &km).block_diff(&km.scale(c(-2.0)), b);
    (first, plus.max(minus))
}

/// [`su11_residuals_on`] over the configured block.
pub fn su11_generator_check(fock: &FockSpace) -> (f64, f64) {
    su11_residuals_on(fock, fock.block)
}

/// `D(α) · 2P · D†(α)`.
pub fn wigner_operator(alpha: Complex64, fock: &FockSpace) -> Result<CMatrix> {
    let d = displacement_op(alpha, fock)?;
    Ok(&(&d * &fock.parity().scale(c(2.0))) * &d.dagger())
}

/// `‖D(α) P D†(α) - D(2α) P‖` on the block.
pub fn parity_displaced_wigner_check(alpha: Complex64, fock: &FockSpace) -> Result<f64> {
    fock.heuristic(alpha.norm() <= 0.5, format!("|α| = {} exceeds 0.5", alpha.norm()))?;
    let p = fock.parity();
    let d = displacement_op(alpha, fock)?;
    let lhs = &(&d * &p) * &d.dagger();
    let rhs = &displacement_op(2.0 * alpha, fock)? * &p;
    Ok(lhs.block_diff(&rhs, fock.block))
}

/// `‖ŵ(α) - ŵ(α)†‖` over the full matrix.
pub fn wigner_hermiticity(alpha: Complex64, fock: &FockSpace) -> Result<f64> {
    let w = wigner_operator(alpha, fock)?;
    Ok(w.block_diff(&w.dagger(), fock.dim))
}

/// `ŵ(α) = (1/π) ∫ e^{αβ* - α*β} D(β) d²β` on levels `0..levels` by a
/// tensor Gauss–Hermite rule in `β = √2 (u + iv)`, using the closed-form
/// matrix elements of `D(β)`. Independent of any truncated matrix.
pub fn wigner_operator_integral(alpha: Complex64, levels: usize, nodes: usize) -> Result<CMatrix> {
    let (xs, ws) = gauss_hermite(nodes);
    let mut out = CMatrix::zeros(levels);
    for (u, wu) in xs.iter().zip(&ws) {
        for (v, wv) in xs.iter().zip(&ws) {
            let beta = Complex64::new(*u, *v) * 2f64.sqrt();
            let phase = (alpha * beta.conj() - alpha.conj() * beta).exp();
            // strip the Gaussian that the rule's weight supplies
            let gauss_inv = (0.5 * beta.norm_sqr()).exp();
            let w = wu * wv * 2.0 / PI * gauss_inv;
            for m in 0..levels {
                for n in 0..levels {
                    out[(m, n)] += phase * displacement_element(m, n, beta)? * w;
                }
            }
        }
    }
    Ok(out)
}

/// `‖D(α)ŵ(0)D†(α) - ŵ_integral(α)‖` on levels `0..levels`.
pub fn wigner_covariance_check(alpha: Complex64, fock: &FockSpace, levels: usize, nodes: usize) -> Result<f64> {
    let w = wigner_operator(alpha, fock)?;
    let q = wigner_operator_integral(alpha, levels, nodes)?;
    Ok(w.block_diff(&q, levels))
}

/// `‖U†U - I‖` over the full matrix.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    (&u.dagger() * u).block_diff(&CMatrix::identity(u.dim()), u.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ladder_structure() {
        let f = FockSpace::new(16).unwrap();
        assert_eq!(f.a[(2, 3)], c(3f64.sqrt()));
        assert!(f.commutator_defect() < 1e-14);
        let comm = &(&f.a * &f.adag) - &(&f.adag * &f.a);
        assert!((comm[(15, 15)] - c(-15.0)).norm() < 1e-13);
        assert!(FockSpace::new(4).is_err());
    }

    #[test]
    fn displacement_basics() {
        let f = FockSpace::new(64).unwrap();
        assert!(displacement_op(ZERO, &f).unwrap().block_diff(&f.identity(), 64) == 0.0);
        for &a in &[ci(0.3, 0.0), ci(-0.6, 0.8), ci(0.0, 1.0)] {
            assert!(unitarity_defect(&displacement_op(a, &f).unwrap()) < 1e-10);
        }
        assert!(matches!(displacement_op(ci(4.0, 2.0), &f), Err(Error::TruncationWarning(_))));
        assert!(displacement_op(ci(4.0, 2.0), &f.clone().lenient()).is_ok());
    }

    #[test]
    fn matrix_elements_match_closed_form() {
        let f = FockSpace::new(96).unwrap();
        let alpha = ci(0.4, -0.3);
        let d = displacement_op(alpha, &f).unwrap();
        for m in 0..12 {
            for n in 0..12 {
                let e = displacement_element(m, n, alpha).unwrap();
                assert!((d[(m, n)] - e).norm() < 1e-13, "({m},{n})");
            }
        }
    }

    #[test]
    fn identities_at_example_points() {
        let f = FockSpace::new(64).unwrap();
        assert!(composition_check(ci(0.5, 0.0), ci(0.2, -0.5), &f).unwrap() < 1e-8);
        assert_eq!(braiding_check(ci(0.3, 0.1), ZERO, &f).unwrap(), 0.0);
        assert!(braiding_check(ci(0.3, 0.1), ci(0.3, 0.1), &f).unwrap() < 1e-15);
        assert!(braiding_check(ci(0.3, 0.0), ci(0.0, 0.2), &f).unwrap() < 1e-8);
        assert!(bch_check(ZERO, &f).unwrap() == 0.0);
        assert!(bch_check(ci(0.5, 0.0), &f).unwrap() < 1e-8);
        let g = FockSpace::new(128).unwrap();
        assert!(squeeze_conjugation_check(0.0, 0.3, &g).unwrap() < 1e-15);
        assert!(squeeze_conjugation_check(0.5, 0.0, &g).unwrap() < 1e-6);
        assert!(parity_displaced_wigner_check(ZERO, &g).unwrap() < 1e-15);
        assert!(parity_displaced_wigner_check(ci(0.25, 0.0), &g).unwrap() < 1e-6);
        assert!(wigner_hermiticity(ci(0.2, 0.3), &g).unwrap() < 1e-10);
    }

    #[test]
    fn braiding_with_half_exponent_fails() {
        let f = FockSpace::new(64).unwrap();
        let (a, b) = (ci(0.3, 0.0), ci(0.0, 0.2));
        let da = displacement_op(a, &f).unwrap();
        let db = displacement_op(b, &f).unwrap();
        let half = (0.5 * (a * b.conj() - b * a.conj())).exp();
        assert!((&da * &db).block_diff(&(&db * &da).scale(half), 16) > 1e-2);
    }

    #[test]
    fn squeeze_is_periodic_in_theta() {
        let f = FockSpace::new(48).unwrap();
        let a = squeeze_conjugation_check(0.4, 0.7, &f).unwrap();
        let b = squeeze_conjugation_check(0.4, 0.7 + 2.0 * PI, &f).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn su11_algebra_is_exact_below_the_edge() {
        let f = FockSpace::new(32).unwrap();
        let (r1, r2) = su11_generator_check(&f);
        assert!(r1 < 1e-12 && r2 < 1e-12);
        let (r1, r2) = su11_residuals_on(&f, 30);
        assert!(r1 < 1e-12 && r2 < 1e-12);
        let (full1, _) = su11_residuals_on(&f, 32);
        assert!(full1 > 1.0);
    }

    #[test]
    fn truncation_error_shrinks_with_dimension() {
        // a 3N/4 block keeps the BCH error above rounding long enough to see it fall
        let r: Vec<f64> = [16, 32, 64, 128]
            .iter()
            .map(|&n| {
                let f = FockSpace::new(n).unwrap().with_block(3 * n / 4).unwrap();
                bch_check(ci(0.5, 0.0), &f).unwrap()
            })
            .collect();
        for w in r.windows(2) {
            assert!(w[1] < w[0] || w[1] < 1e-12, "{r:?}");
        }
        let s: Vec<f64> = [32, 64]
            .iter()
            .map(|&n| squeeze_conjugation_check(0.5, 0.0, &FockSpace::new(n).unwrap()).unwrap())
            .collect();
        assert!(s[1] * 10.0 <= s[0], "{s:?}");
    }

    #[test]
    fn wigner_operator_covariance_by_quadrature() {
        let f = FockSpace::new(64).unwrap();
        let w0 = wigner_operator(ZERO, &f).unwrap();
        assert!(w0.block_diff(&f.parity().scale(c(2.0)), 64) < 1e-15);
        for &a in &[ZERO, ci(0.3, 0.0), ci(-0.2, 0.35)] {
            assert!(wigner_covariance_check(a, &f, 4, 40).unwrap() < 1e-3);
        }
    }
}
