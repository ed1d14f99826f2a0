use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Highest polynomial order accepted by [`hermite`] and [`laguerre`].
pub const POLY_CEILING: usize = 200;

fn check_order(n: usize) -> Result<()> {
    if n > POLY_CEILING {
        Err(Error::OverflowCeiling {
            order: n,
            ceiling: POLY_CEILING,
        })
    } else {
        Ok(())
    }
}

/// Physicists' Hermite polynomial by the recurrence
/// `H_{k+1} = 2x H_k - 2k H_{k-1}`.
fn hermite_generic<T>(n: usize, x: T) -> T
where
    T: Copy + From<f64> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let two = T::from(2.0);
    let mut prev = T::from(1.0);
    if n == 0 {
        return prev;
    }
    let mut cur = two * x;
    for k in 1..n {
        let next = two * x * cur - T::from(2.0 * k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial `L_n^{(alpha)}` by the recurrence
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
fn laguerre_generic<T>(n: usize, alpha: T, x: T) -> T
where
    T: Copy
        + From<f64>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + std::ops::Div<Output = T>,
{
    let one = T::from(1.0);
    let mut prev = one;
    if n == 0 {
        return prev;
    }
    let mut cur = one + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((T::from(2.0 * kf + 1.0) + alpha - x) * cur - (T::from(kf) + alpha) * prev)
            / T::from(kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Explicit sum `Σ_i C(n+α, n-i) (-x)^i / i!`, used for negative integer
/// `α` where the recurrence loses all relative accuracy near `x = 0`.
fn laguerre_explicit<T>(n: usize, alpha: f64, x: T) -> T
where
    T: Copy + From<f64> + Add<Output = T> + Mul<Output = T>,
{
    let top = n as f64 + alpha;
    let mut acc = T::from(0.0);
    let mut pow = T::from(1.0);
    let mut inv_fact = 1.0;
    for i in 0..=n {
        let j = n - i;
        // C(top, j), exactly zero once 0 ≤ top < j
        let mut binom = 1.0;
        for l in 0..j {
            binom *= (top - l as f64) / (l as f64 + 1.0);
        }
        if binom != 0.0 {
            acc = acc + T::from(binom * inv_fact) * pow;
        }
        pow = pow * (T::from(-1.0) * x);
        inv_fact /= (i + 1) as f64;
    }
    acc
}

fn negative_integer(alpha: f64) -> bool {
    alpha < 0.0 && alpha.fract() == 0.0
}

/// Hermite polynomial `H_n(x)`.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    check_order(n)?;
    let v = hermite_generic(n, x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { what: "hermite" })
    }
}

/// Hermite polynomial at a complex argument.
pub fn hermite_c(n: usize, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    super::finite(hermite_generic(n, z), "hermite")
}

/// Generalized Laguerre polynomial `L_n^{(alpha)}(x)`; `alpha = 0` gives `L_n`.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> Result<f64> {
    check_order(n)?;
    let v = if negative_integer(alpha) {
        laguerre_explicit(n, alpha, x)
    } else {
        laguerre_generic(n, alpha, x)
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { what: "laguerre" })
    }
}

/// Generalized Laguerre polynomial with complex order and argument.
pub fn laguerre_c(n: usize, alpha: Complex64, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    let v = if alpha.im == 0.0 && negative_integer(alpha.re) {
        laguerre_explicit(n, alpha.re, z)
    } else {
        laguerre_generic(n, alpha, z)
    };
    super::finite(v, "laguerre")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, 1.7).unwrap(), 1.0);
        assert_eq!(hermite(1, 3.0).unwrap(), 6.0);
        assert_eq!(hermite(4, 0.0).unwrap(), 12.0);
        // H_4 = 16x^4 - 48x^2 + 12
        let x: f64 = 0.37;
        let expect = 16.0 * x.powi(4) - 48.0 * x * x + 12.0;
        assert!((hermite(4, x).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(0, 0.0, 5.3).unwrap(), 1.0);
        assert_eq!(laguerre(1, 0.0, 2.0).unwrap(), -1.0);
        assert!((laguerre(3, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        // L_m^{(1)}(0) = m + 1
        for m in 0..10 {
            assert!((laguerre(m, 1.0, 0.0).unwrap() - (m as f64 + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(
            hermite(201, 0.1),
            Err(Error::OverflowCeiling { order: 201, .. })
        ));
        assert!(matches!(
            laguerre(250, 0.0, 0.1),
            Err(Error::OverflowCeiling { .. })
        ));
        assert!(hermite(200, 1.0).is_ok());
    }

    #[test]
    fn hermite_recurrence_identity_holds() {
        for n in 1..50 {
            for i in 0..=40 {
                let x = -10.0 + 0.5 * i as f64;
                let hp = hermite(n + 1, x).unwrap();
                let h = hermite(n, x).unwrap();
                let hm = hermite(n - 1, x).unwrap();
                let scale = hp.abs().max(2.0 * x.abs() * h.abs()).max(2.0 * n as f64 * hm.abs());
                assert!((hp - 2.0 * x * h + 2.0 * n as f64 * hm).abs() <= 1e-10 * scale.max(1.0));
            }
        }
    }

    #[test]
    fn laguerre_ode_residual_is_small() {
        // x L'' + (α+1-x) L' + n L = 0, centered differences
        let h = 1e-4;
        for &alpha in &[0.0, 0.5, 1.0, 2.5] {
            for n in 0..8 {
                for i in 0..40 {
                    let x = 0.1 + i as f64 * 0.5;
                    let f = |t: f64| laguerre(n, alpha, t).unwrap();
                    let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
                    let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
                    let res = x * d2 + (alpha + 1.0 - x) * d1 + n as f64 * f(x);
                    let scale = f(x).abs().max(1.0) * (1.0 + x).powi(2);
                    assert!(res.abs() < 1e-6 * scale, "n={n} a={alpha} x={x} res={res}");
                }
            }
        }
    }

    // Σ_i |C(n+α, n-i)| x^i / i!
    fn laguerre_abs(n: usize, alpha: f64, x: f64) -> f64 {
        (0..=n)
            .map(|i| {
                let j = n - i;
                let b: f64 = (0..j).map(|l| (n as f64 + alpha - l as f64) / (l as f64 + 1.0)).product();
                b.abs() * x.powi(i as i32) / factorial(i)
            })
            .sum()
    }

    #[test]
    fn order_switching_formula() {
        // (-x)^k/k! L_n^{(k-n)}(x) = (-x)^n/n! L_k^{(n-k)}(x)
        for n in 0..=10 {
            for k in 0..=10 {
                for i in 1..=20 {
                    let x = 0.5 * i as f64;
                    let lhs = (-x).powi(k as i32) / factorial(k)
                        * laguerre(n, k as f64 - n as f64, x).unwrap();
                    let rhs = (-x).powi(n as i32) / factorial(n)
                        * laguerre(k, n as f64 - k as f64, x).unwrap();
                    // near a root of L, measure against the size of the summands
                    let cond = (x.powi(k as i32) / factorial(k) * laguerre_abs(n, k as f64 - n as f64, x))
                        .max(x.powi(n as i32) / factorial(n) * laguerre_abs(k, n as f64 - k as f64, x));
                    let scale = lhs.abs().max(rhs.abs()).max(cond);
                    assert!((lhs - rhs).abs() <= 1e-9 * scale, "n={n} k={k} x={x} {lhs} {rhs}");
                }
            }
        }
    }

    #[test]
    fn order_switching_as_printed_fails_off_diagonal() {
        // With subscript n kept on the right-hand side the identity breaks
        // whenever k != n, e.g. n = 1, k = 0: -x vs -x (2 - x).
        let x = 0.7;
        let lhs = laguerre(1, -1.0, x).unwrap();
        let rhs = -x * laguerre(1, 1.0, x).unwrap();
        assert!((lhs - rhs).abs() > 0.1);
    }

    #[test]
    fn complex_matches_real_on_axis() {
        for n in 0..12 {
            let x = 0.83;
            let hc = hermite_c(n, Complex64::new(x, 0.0)).unwrap();
            assert!((hc.re - hermite(n, x).unwrap()).abs() < 1e-10 * hc.re.abs().max(1.0));
            let lc = laguerre_c(n, Complex64::new(0.5, 0.0), Complex64::new(x, 0.0)).unwrap();
            assert!((lc.re - laguerre(n, 0.5, x).unwrap()).abs() < 1e-12);
        }
    }
}
