//! Finite-difference and Fourier differentiation on one grid axis.

use crate::error::{Error, Result};

/// Fornberg weights for the `m`-th derivative at `z` from the given nodes.
pub fn fornberg_weights(z: f64, nodes: &[f64], m: usize) -> Vec<f64> {
    let n = nodes.len();
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Centered stencil for the `m`-th derivative with accuracy `order` on a
/// unit-spaced lattice: offsets `-w..=w` and their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    pub half_width: usize,
    pub weights: Vec<f64>,
}

impl Stencil {
    pub fn centered(m: usize, order: usize) -> Self {
        if m == 0 {
            return Self {
                half_width: 0,
                weights: vec![1.0],
            };
        }
        // 2⌊(m+1)/2⌋ - 1 + order points
        let w = (m + 1) / 2 - 1 + order.div_ceil(2);
        let nodes: Vec<f64> = (-(w as i64)..=w as i64).map(|k| k as f64).collect();
        Self {
            half_width: w,
            weights: fornberg_weights(0.0, &nodes, m),
        }
    }
}

/// How derivatives of grid data are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeScheme {
    /// Centered differences of the given (even) accuracy order.
    FiniteDifference { order: usize },
    /// Fourier collocation; the field is treated as periodic on the grid.
    Spectral,
}

impl Default for DerivativeScheme {
    fn default() -> Self {
        Self::FiniteDifference { order: 4 }
    }
}

impl DerivativeScheme {
    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            Self::FiniteDifference { order } if order == 0 || order % 2 == 1 || order > 12 => Err(
                Error::InvalidInput(format!("finite-difference order must be even in 2..=12, got {order}")),
            ),
            _ => Ok(()),
        }
    }

    /// Cells lost at each edge when taking an `m`-th derivative.
    pub fn half_width(&self, m: usize) -> usize {
        match *self {
            Self::FiniteDifference { order } => Stencil::centered(m, order).half_width,
            Self::Spectral => 0,
        }
    }
}

/// Boundary treatment for finite differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Outputs within the stencil half width of an edge are left at zero.
    Interior,
    /// Values beyond the grid are taken as zero.
    ZeroExtension,
}

/// Applies a derivative along one axis of a row-major `n_outer × n_inner`
/// array. `axis_inner` selects the fast axis.
pub(crate) fn derivative(
    data: &[f64],
    n_outer: usize,
    n_inner: usize,
    axis_inner: bool,
    m: usize,
    step: f64,
    scheme: DerivativeScheme,
    boundary: Boundary,
) -> Vec<f64> {
    if m == 0 {
        return data.to_vec();
    }
    let (len, stride, lines, line_stride) = if axis_inner {
        (n_inner, 1usize, n_outer, n_inner)
    } else {
        (n_outer, n_inner, n_inner, 1usize)
    };
    let mut out = vec![0.0; data.len()];
    match scheme {
        DerivativeScheme::FiniteDifference { order } => {
            let st = Stencil::centered(m, order);
            let w = st.half_width as i64;
            let scale = step.powi(-(m as i32));
            for l in 0..lines {
                let base = l * line_stride;
                for k in 0..len as i64 {
                    let interior = k >= w && k < len as i64 - w;
                    if !interior && boundary == Boundary::Interior {
                        continue;
                    }
                    let mut acc = 0.0;
                    for (o, wt) in st.weights.iter().enumerate() {
                        let idx = k + o as i64 - w;
                        if idx >= 0 && idx < len as i64 {
                            acc += wt * data[base + idx as usize * stride];
                        }
                    }
                    out[base + k as usize * stride] = acc * scale;
                }
            }
        }
        DerivativeScheme::Spectral => {
            let d = fourier_matrix(len, step);
            let mut line = vec![0.0; len];
            let mut tmp = vec![0.0; len];
            for l in 0..lines {
                let base = l * line_stride;
                for k in 0..len {
                    line[k] = data[base + k * stride];
                }
                for _ in 0..m {
                    for (r, t) in tmp.iter_mut().enumerate() {
                        *t = d[r * len..(r + 1) * len].iter().zip(&line).map(|(a, b)| a * b).sum();
                    }
                    std::mem::swap(&mut line, &mut tmp);
                }
                for k in 0..len {
                    out[base + k * stride] = line[k];
                }
            }
        }
    }
    out
}

/// First-derivative Fourier collocation matrix for `n` points of spacing `h`.
fn fourier_matrix(n: usize, h: f64) -> Vec<f64> {
    let mut d = vec![0.0; n * n];
    let scale = 2.0 * std::f64::consts::PI / (n as f64 * h);
    let theta = 2.0 * std::f64::consts::PI / n as f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let k = i as f64 - j as f64;
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            d[i * n + j] = scale
                * if n % 2 == 0 {
                    0.5 * sign / (0.5 * k * theta).tan()
                } else {
                    0.5 * sign / (0.5 * k * theta).sin()
                };
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_weights() {
        let s = Stencil::centered(1, 4);
        let want = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in s.weights.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        let s2 = Stencil::centered(2, 2);
        assert_eq!(s2.half_width, 1);
        assert!((s2.weights[1] + 2.0).abs() < 1e-14);
        assert_eq!(Stencil::centered(4, 4).half_width, 3);
    }

    #[test]
    fn stencils_differentiate_polynomials_exactly() {
        // order-4 stencils are exact on polynomials of degree < m + 4
        let xs: Vec<f64> = (0..20).map(|k| 0.1 * k as f64).collect();
        for m in 1..=4 {
            let data: Vec<f64> = xs.iter().map(|x| x.powi(m as i32 + 2)).collect();
            let d = derivative(
                &data,
                1,
                20,
                true,
                m,
                0.1,
                DerivativeScheme::default(),
                Boundary::Interior,
            );
            let w = Stencil::centered(m, 4).half_width;
            let fall: f64 = (3..=(m + 2)).map(|k| k as f64).product();
            for k in w..20 - w {
                let want = fall * xs[k].powi(2);
                assert!((d[k] - want).abs() < 1e-8 * want.abs().max(1.0), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn spectral_derivative_of_periodic_field() {
        let n = 32;
        let h = 2.0 * std::f64::consts::PI / n as f64;
        let data: Vec<f64> = (0..n).map(|k| (3.0 * k as f64 * h).sin()).collect();
        let d = derivative(&data, 1, n, true, 2, h, DerivativeScheme::Spectral, Boundary::Interior);
        for k in 0..n {
            assert!((d[k] + 9.0 * data[k]).abs() < 1e-10);
        }
    }
}
