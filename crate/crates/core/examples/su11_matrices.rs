//! 2×2 SU(1,1) identities: LDU factorization, parity inversion, and the
//! characteristic-function form of the matrix Wigner operator.

use wignerkit::su_matrix::{gauss_ldu_check, group_covariance_check, parity_inversion_check, t_product, wigner_char_mat, GroupParams, Mat2C};
use num_complex::Complex64;

fn main() -> wignerkit::Result<()> {
    for (r, theta) in [(0.3, 0.2), (1.0, -1.1), (2.0, 2.5)] {
        let (first, second) = parity_inversion_check(r, theta);
        println!(
            "r={r} θ={theta}: LDU {:.1e}, parity first {:.1e}, second {:.4} (2|sin 2r| = {:.4})",
            gauss_ldu_check(r, theta)?,
            first,
            second,
            2.0 * (2.0 * r).sin().abs()
        );
    }
    let g = GroupParams::character(0.7, 0.9, -0.4);
    let w = wigner_char_mat(g.phi, g.tau, g.chi);
    let e = w.entries();
    println!("ŵ = [[{:.6}, {:.6}], [{:.6}, {:.6}]]", e[0], e[1], e[2], e[3]);
    println!("|ŵ - S e^(iΦk₀) S⁻¹| = {:.1e}, det = {:.15}", w.max_abs_diff(&t_product(&g)), w.det());
    let rho = Mat2C::new(Complex64::new(0.6, 0.0), Complex64::new(0.2, 0.1), Complex64::new(0.2, -0.1), Complex64::new(0.4, 0.0));
    let zeta = GroupParams::character(1.2, 0.5, 0.3);
    println!("covariance residual {:.1e}", group_covariance_check(&rho, &g, &zeta)?);
    Ok(())
}
