use rayon::prelude::*;
use std::f64::consts::PI;

use super::{GridSpec, Wavefunction, WignerGrid};
use crate::error::{Error, Result};

/// Largest edge amplitude, relative to `max |ψ|`, a wavefunction may have.
pub const DECAY_TOL: f64 = 1e-12;

/// Largest imaginary part the raw transform may carry.
pub const IMAG_TOL: f64 = 1e-9;

/// Side information from a Wigner transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformDiagnostic {
    /// `max |Im f|` of the raw sum before the real part is kept.
    pub max_imag: f64,
    /// Edge amplitude relative to `max |ψ|`.
    pub edge_ratio: f64,
}

/// Wigner transform of `psi` on the lattice `spec`.
///
/// Every grid `x` must sit on the half-step lattice of `psi`
/// (`x = x0 + s dx/2` for integer `s`), so that `x ± y` hits samples
/// exactly; the `y` integral is then a trapezoid sum with step `dx`.
pub fn wigner_transform(psi: &Wavefunction, spec: &GridSpec) -> Result<WignerGrid> {
    wigner_transform_diagnostic(psi, spec).map(|(g, _)| g)
}

/// [`wigner_transform`] together with its diagnostic.
pub fn wigner_transform_diagnostic(psi: &Wavefunction, spec: &GridSpec) -> Result<(WignerGrid, TransformDiagnostic)> {
    spec.validate()?;
    let n = psi.len();
    let amp: Vec<f64> = psi.samples.iter().map(|z| z.norm()).collect();
    let peak = amp.iter().cloned().fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::InvalidInput("wavefunction is identically zero".into()));
    }
    let edge_ratio = amp[0].max(amp[n - 1]) / peak;
    if edge_ratio > DECAY_TOL {
        return Err(Error::BoundaryDecayViolation {
            edge: edge_ratio,
            tol: DECAY_TOL,
        });
    }
    // effective support: |ψ| below DECAY_TOL·peak counts as zero
    let lo = amp.iter().position(|a| *a > DECAY_TOL * peak).unwrap_or(0);
    let hi = amp.iter().rposition(|a| *a > DECAY_TOL * peak).unwrap_or(n - 1);

    let half = 0.5 * psi.dx;
    let mut centers = Vec::with_capacity(spec.nx);
    for i in 0..spec.nx {
        let s = (spec.x(i) - psi.x0) / half;
        let r = s.round();
        if (s - r).abs() > 1e-6 {
            return Err(Error::GridMismatch(format!(
                "grid x = {} is off the half-step lattice of the wavefunction",
                spec.x(i)
            )));
        }
        centers.push(r as i64);
    }

    // phase table over half-steps m: y = m dx/2, θ = 2 p y / ħ
    let max_m = 2 * (hi - lo + 2);
    let np = spec.np;
    let mut cos_t = vec![0.0; (max_m + 1) * np];
    let mut sin_t = vec![0.0; (max_m + 1) * np];
    for m in 0..=max_m {
        let y = m as f64 * half;
        for j in 0..np {
            let (s, c) = (2.0 * spec.p(j) * y / spec.hbar).sin_cos();
            cos_t[m * np + j] = c;
            sin_t[m * np + j] = s;
        }
    }

    let norm = psi.dx / (PI * spec.hbar);
    let lo = lo as i64;
    let hi = hi as i64;
    let samples = &psi.samples;
    let mut values = vec![0.0; spec.len()];
    let imag: Vec<f64> = values
        .par_chunks_mut(np)
        .zip(centers.par_iter())
        .map(|(row, &s)| {
            let mut re = vec![0.0; np];
            let mut im = vec![0.0; np];
            // pairs (a + k, b - k) with a + b = s, y = (a - b + 2k) dx/2
            let (a, b) = if s % 2 == 0 { (s / 2, s / 2) } else { ((s + 1) / 2, (s - 1) / 2) };
            let start = if a == b {
                if (lo..=hi).contains(&a) {
                    let g = samples[a as usize].norm_sqr();
                    for r in re.iter_mut() {
                        *r += g;
                    }
                }
                1
            } else {
                0
            };
            let k_lo = start.max(lo - a).max(b - hi);
            let k_hi = (hi - a).min(b - lo);
            for k in k_lo..=k_hi {
                let up = samples[(a + k) as usize];
                let dn = samples[(b - k) as usize];
                // g(y) = ψ*(x+y)ψ(x-y), g(-y) = ψ*(x-y)ψ(x+y)
                let gp = up.conj() * dn;
                let gm = dn.conj() * up;
                let m = (a - b + 2 * k) as usize;
                let c = &cos_t[m * np..(m + 1) * np];
                let sn = &sin_t[m * np..(m + 1) * np];
                let sr = gp.re + gm.re;
                let di = gp.im - gm.im;
                let si = gp.im + gm.im;
                let dr = gp.re - gm.re;
                for j in 0..np {
                    re[j] += sr * c[j] - di * sn[j];
                    im[j] += si * c[j] + dr * sn[j];
                }
            }
            let mut worst: f64 = 0.0;
            for j in 0..np {
                row[j] = norm * re[j];
                worst = worst.max((norm * im[j]).abs());
            }
            worst
        })
        .collect();
    let max_imag = imag.into_iter().fold(0.0, f64::max);
    if max_imag > IMAG_TOL {
        return Err(Error::NonHermitianResult {
            max_imag,
            tol: IMAG_TOL,
        });
    }
    let grid = WignerGrid::new(*spec, values)?;
    Ok((grid, TransformDiagnostic { max_imag, edge_ratio }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{marginal_p, marginal_x, total_probability};
    use num_complex::Complex64;

    fn ground(x: f64) -> Complex64 {
        Complex64::new(PI.powf(-0.25) * (-0.5 * x * x).exp(), 0.0)
    }

    fn first(x: f64) -> Complex64 {
        Complex64::new(PI.powf(-0.25) * 2f64.sqrt() * x * (-0.5 * x * x).exp(), 0.0)
    }

    #[test]
    fn ground_state_peak_is_one_over_pi() {
        let spec = GridSpec::square(61, 6.0);
        let psi = Wavefunction::sample_for_grid(&spec, 1, 9.0, ground).unwrap();
        let (f, d) = wigner_transform_diagnostic(&psi, &spec).unwrap();
        assert!((f.get(30, 30) - 1.0 / PI).abs() < 1e-12);
        assert!(d.max_imag < 1e-15);
        assert!((total_probability(&f) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn odd_half_step_centres_are_used() {
        // refine = 2 puts grid points on full steps, refine = 1 with an
        // offset lattice puts them on half steps
        let spec = GridSpec::square(41, 5.0);
        let psi = Wavefunction::sample(-9.0 - spec.dx / 2.0, spec.dx, 1 + (18.0 / spec.dx) as usize + 1, ground).unwrap();
        let f = wigner_transform(&psi, &spec).unwrap();
        let want = crate::phase_space::WignerGrid::from_fn(spec, |x, p| (-(x * x + p * p)).exp() / PI).unwrap();
        assert!(f.max_abs_diff(&want).unwrap() < 1e-12);
    }

    #[test]
    fn first_excited_marginals() {
        let spec = GridSpec::square(121, 6.5);
        let psi = Wavefunction::sample_for_grid(&spec, 1, 9.0, first).unwrap();
        let f = wigner_transform(&psi, &spec).unwrap();
        let mx = marginal_x(&f);
        let mp = marginal_p(&f);
        for i in 0..spec.nx {
            let x = spec.x(i);
            let want = 2.0 * x * x * (-x * x).exp() / PI.sqrt();
            assert!((mx[i] - want).abs() < 1e-6);
            assert!((mp[i] - want).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_slow_decay_and_misaligned_grids() {
        let spec = GridSpec::square(21, 3.0);
        let wide = Wavefunction::sample_for_grid(&spec, 1, 4.0, |x| Complex64::new((-0.1 * x * x).exp(), 0.0)).unwrap();
        assert!(matches!(
            wigner_transform(&wide, &spec),
            Err(Error::BoundaryDecayViolation { .. })
        ));
        let psi = Wavefunction::sample(-9.0, 0.013, 1400, ground).unwrap();
        assert!(matches!(wigner_transform(&psi, &spec), Err(Error::GridMismatch(_))));
    }
}
