//! Displacement and squeeze identities in a truncated Fock space, with
//! residuals shrinking as the truncation grows.

use num_complex::Complex64;
use wignerkit::fock_oracle::{bch_check, braiding_check, composition_check, parity_displaced_wigner_check, squeeze_conjugation_check, su11_generator_check, FockSpace};

fn main() -> wignerkit::Result<()> {
    let a = Complex64::new(0.5, 0.0);
    let b = Complex64::new(0.2, -0.5);
    println!("{:>5} {:>11} {:>11} {:>11} {:>11} {:>11} {:>11}", "N", "compose", "braid", "bch", "squeeze", "k-algebra", "parity");
    for n in [16, 32, 64, 128] {
        let f = FockSpace::new(n)?;
        let (k1, k2) = su11_generator_check(&f);
        println!(
            "{n:>5} {:>11.2e} {:>11.2e} {:>11.2e} {:>11.2e} {:>11.2e} {:>11.2e}",
            composition_check(a, b, &f)?,
            braiding_check(Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.2), &f)?,
            bch_check(a, &f)?,
            squeeze_conjugation_check(0.5, 0.0, &f)?,
            k1.max(k2),
            parity_displaced_wigner_check(Complex64::new(0.25, 0.0), &f)?
        );
    }
    Ok(())
}
