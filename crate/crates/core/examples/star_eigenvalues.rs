//! Star-eigenvalue residuals `H ⋆ f - E f` for the three model systems.

use wignerkit::models::{model_star_residual, ModelSpec};
use wignerkit::phase_space::GridSpec;

fn main() -> wignerkit::Result<()> {
    let sho = GridSpec::square(161, 6.0);
    for n in 0..=5 {
        let r = model_star_residual(&ModelSpec::sho(n), &sho)?;
        println!("sho n={n}: real {:.2e} imag {:.2e}", r.real_res, r.imag_res);
    }
    // the xp and hyperbolic shape functions live in the x, p > 0 quadrant
    let quadrant = GridSpec { x0: 0.3, dx: 0.01, nx: 121, p0: 0.35, dp: 0.01, np: 121, hbar: 1.0 };
    for e in [0.5, 1.0, 2.0] {
        let r = model_star_residual(&ModelSpec::xp(e), &quadrant)?;
        println!("xp E={e}: transport residual {:.2e}", r.imag_res);
    }
    let window = GridSpec::square(121, 2.0);
    for n in 0..3 {
        let r = model_star_residual(&ModelSpec::hyperbolic(n), &window)?;
        println!("hyperbolic n={n}: transport residual {:.2e}", r.imag_res);
    }
    Ok(())
}
