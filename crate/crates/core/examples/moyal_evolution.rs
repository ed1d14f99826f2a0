//! A Gaussian packet under the harmonic Hamiltonian rotates rigidly.

use std::f64::consts::PI;
use wignerkit::phase_space::{total_probability, GridSpec, WignerGrid};
use wignerkit::star_engine::{moyal_evolve_series, PolynomialHamiltonian};

fn packet(spec: GridSpec, x0: f64, p0: f64) -> wignerkit::Result<WignerGrid> {
    WignerGrid::from_fn(spec, |x, p| (-((x - x0).powi(2) + (p - p0).powi(2))).exp() / PI)
}

fn main() -> wignerkit::Result<()> {
    let spec = GridSpec::square(201, 6.0);
    let f0 = packet(spec, 1.5, 0.0)?;
    let series = moyal_evolve_series(&PolynomialHamiltonian::sho(), &f0, PI / 2.0, 0.005, 4)?;
    for (t, f) in &series {
        // classical flow: (x, p) → (x cos t + p sin t, p cos t - x sin t)
        let want = packet(spec, 1.5 * t.cos(), -1.5 * t.sin())?;
        println!(
            "t={t:.4} L∞ vs rotated {:.2e} probability drift {:.2e}",
            f.max_abs_diff(&want)?,
            total_probability(f) - total_probability(&f0)
        );
    }
    Ok(())
}
