//! Harmonic-oscillator Wigner functions: the Laguerre closed form against a
//! direct transform of the Hermite eigenstate.

use wignerkit::models::{sho_wavefunction, sho_wigner_grid};
use wignerkit::phase_space::{expectation, total_probability, wigner_transform, GridSpec, WignerGrid};

fn main() -> wignerkit::Result<()> {
    let spec = GridSpec::square(257, 6.0);
    let energy = WignerGrid::from_fn(spec, |x, p| 0.5 * (x * x + p * p))?;
    println!("{:>2} {:>12} {:>14} {:>10}", "n", "L∞ gap", "∬f", "⟨H⟩");
    for n in 0..=5 {
        let closed = sho_wigner_grid(n, &spec)?;
        let transformed = wigner_transform(&sho_wavefunction(n, &spec)?, &spec)?;
        println!(
            "{n:>2} {:>12.3e} {:>14.10} {:>10.6}",
            closed.max_abs_diff(&transformed)?,
            total_probability(&closed),
            expectation(&energy, &closed)?
        );
    }
    Ok(())
}
