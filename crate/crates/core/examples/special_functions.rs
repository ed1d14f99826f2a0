//! Whittaker W by its series/connection route and by its Laplace integral,
//! plus the integral identities used by the oscillator models.

use num_complex::Complex64;
use wignerkit::models::{gr_7_622_11, gr_7_622_11_quadrature, xp_integral_representation};
use wignerkit::specfun::{gr_7_377, gr_7_377_quadrature, gr_7_414_6, gr_7_414_6_quadrature, whittaker_w, whittaker_w_integral};

fn main() -> wignerkit::Result<()> {
    let cases = [
        (Complex64::new(0.0, 1.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, 4.0)),
        (Complex64::new(0.3, -0.2), Complex64::new(0.25, 0.0), Complex64::new(1.5, 2.0)),
        (Complex64::new(-0.4, 0.1), Complex64::new(0.05, 0.0), Complex64::new(3.0, -1.0)),
    ];
    for (k, m, z) in cases {
        let a = whittaker_w(k, m, z)?;
        let b = whittaker_w_integral(k, m, z)?;
        println!(
            "W({k}, {m}; {z}) = {:.15} [{:?} ±{:.1e}] vs {:.15} [±{:.1e}]",
            a.value, a.method, a.est_error, b.value, b.est_error
        );
    }
    for n in [0, 4, 10] {
        println!("7.414.6 b=2 n={n}: {:.15e} vs {:.15e}", gr_7_414_6(2.0, n)?, gr_7_414_6_quadrature(2.0, n)?);
    }
    let (y, z) = (Complex64::new(0.7, -0.3), Complex64::new(-0.4, 1.1));
    println!("7.377 m=3 n=5: {:.12} vs {:.12}", gr_7_377(3, 5, y, z)?, gr_7_377_quadrature(3, 5, y, z)?);
    println!("7.622.11 (2, 1): {:.15} vs {:.15}", gr_7_622_11(2.0, 1.0)?, gr_7_622_11_quadrature(2.0, 1.0)?);
    let w = whittaker_w(Complex64::new(0.0, 1.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, 4.0 * 0.6 * 0.9))?;
    println!("xp integral at (0.6, 0.9): {:.12} vs W {:.12}", xp_integral_representation(1.0, 0.6, 0.9)?, w.value);
    Ok(())
}
