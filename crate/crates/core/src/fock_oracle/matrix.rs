use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Leading `b × b` block.
    pub fn block(&self, b: usize) -> Self {
        let b = b.min(self.n);
        Self::from_fn(b, |i, j| self[(i, j)])
    }

    /// `max |self - other|` over the leading `b × b` block.
    pub fn block_diff(&self, other: &CMatrix, b: usize) -> f64 {
        let b = b.min(self.n).min(other.n);
        let mut worst: f64 = 0.0;
        for i in 0..b {
            for j in 0..b {
                worst = worst.max((self[(i, j)] - other[(i, j)]).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &CMatrix) -> Result<CMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut x = rhs.clone();
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
                .expect("non-empty pivot range");
            if a[(piv, k)].norm() == 0.0 {
                return Err(Error::InvalidInput("singular matrix in solve".into()));
            }
            if piv != k {
                for j in 0..n {
                    a.data.swap(k * n + j, piv * n + j);
                    x.data.swap(k * n + j, piv * n + j);
                }
            }
            let inv = a[(k, k)].inv();
            for i in (k + 1)..n {
                let l = a[(i, k)] * inv;
                if l == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= l * v;
                }
                for j in 0..n {
                    let v = x[(k, j)];
                    x[(i, j)] -= l * v;
                }
            }
        }
        for k in (0..n).rev() {
            let inv = a[(k, k)].inv();
            for j in 0..n {
                let mut s = x[(k, j)];
                for m in (k + 1)..n {
                    s -= a[(k, m)] * x[(m, j)];
                }
                x[(k, j)] = s * inv;
            }
        }
        Ok(x)
    }

    fn lin(terms: &[(f64, &CMatrix)], n: usize) -> CMatrix {
        let mut out = CMatrix::zeros(n);
        for (c, m) in terms {
            for (o, v) in out.data.iter_mut().zip(&m.data) {
                *o += v * *c;
            }
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, b) in row.iter_mut().zip(&rhs.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

const THETA: [(usize, f64); 5] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
    (13, 5.371920351148152e0),
];

fn pade_coeffs(m: usize) -> &'static [f64] {
    match m {
        3 => &[120.0, 60.0, 12.0, 1.0],
        5 => &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0],
        7 => &[17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0],
        9 => &[
            17643225600.0,
            8821612800.0,
            2075673600.0,
            302702400.0,
            30270240.0,
            2162160.0,
            110880.0,
            3960.0,
            90.0,
            1.0,
        ],
        _ => &[
            64764752532480000.0,
            32382376266240000.0,
            7771770303897600.0,
            1187353796428800.0,
            129060195264000.0,
            10559470521600.0,
            670442572800.0,
            33522128640.0,
            1323241920.0,
            40840800.0,
            960960.0,
            16380.0,
            182.0,
            1.0,
        ],
    }
}

/// Matrix exponential by scaling and squaring with diagonal Padé
/// approximants of degree 3 to 13, chosen from the 1-norm.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("expm of a non-finite matrix".into()));
    }
    let n = a.dim();
    let id = CMatrix::identity(n);
    let norm = a.norm1();
    let a2 = a * a;
    for &(m, theta) in &THETA[..4] {
        if norm <= theta {
            let b = pade_coeffs(m);
            let mut pw = vec![id.clone(), a2.clone()];
            while pw.len() <= m / 2 {
                let next = &pw[pw.len() - 1] * &a2;
                pw.push(next);
            }
            let odd: Vec<(f64, &CMatrix)> = (0..=m / 2).map(|k| (b[2 * k + 1], &pw[k])).collect();
            let even: Vec<(f64, &CMatrix)> = (0..=m / 2).map(|k| (b[2 * k], &pw[k])).collect();
            let u = a * &CMatrix::lin(&odd, n);
            let v = CMatrix::lin(&even, n);
            return (&v - &u).solve(&(&v + &u));
        }
    }
    let s = if norm > THETA[4].1 { (norm / THETA[4].1).log2().ceil() as i32 } else { 0 };
    let scale = 2f64.powi(-s);
    let a1 = a.scale(Complex64::new(scale, 0.0));
    let a2 = a2.scale(Complex64::new(scale * scale, 0.0));
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = pade_coeffs(13);
    let u_in = &(&a6 * &CMatrix::lin(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], n))
        + &CMatrix::lin(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)], n);
    let u = &a1 * &u_in;
    let v = &(&a6 * &CMatrix::lin(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], n))
        + &CMatrix::lin(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)], n);
    let mut r = (&v - &u).solve(&(&v + &u))?;
    for _ in 0..s {
        r = &r * &r;
    }
    if !r.is_finite() {
        return Err(Error::Overflow { what: "matrix exponential" });
    }
    Ok(r)
}

/// Matrix exponential by a Taylor series on `A/2^s` with `‖A/2^s‖₁ ≤ 1/2`,
/// then squaring. Slower than [`expm`]; kept as an independent path.
pub fn expm_taylor(a: &CMatrix) -> Result<CMatrix> {
    let n = a.dim();
    let norm = a.norm1();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a1 = a.scale(Complex64::new(2f64.powi(-s), 0.0));
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..60 {
        term = (&term * &a1).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
        if term.max_abs() < 1e-18 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_diagonal_and_nilpotent() {
        let d = CMatrix::from_fn(3, |i, j| if i == j { c(i as f64, 0.5) } else { c(0.0, 0.0) });
        let e = expm(&d).unwrap();
        for i in 0..3 {
            assert!((e[(i, i)] - c(i as f64, 0.5).exp()).norm() < 1e-13 * e[(i, i)].norm());
        }
        // e^{N} = I + N for N² = 0
        let mut nil = CMatrix::zeros(2);
        nil[(0, 1)] = c(3.0, -1.0);
        let e = expm(&nil).unwrap();
        assert!((e[(0, 1)] - c(3.0, -1.0)).norm() < 1e-14 && (e[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pade_and_taylor_agree_across_norms() {
        for &s in &[0.01, 0.2, 0.9, 2.0, 5.0, 40.0] {
            let a = CMatrix::from_fn(6, |i, j| c(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64 - 1.0))
                .scale(c(s / 10.0, 0.0));
            let p = expm(&a).unwrap();
            let t = expm_taylor(&a).unwrap();
            assert!(p.block_diff(&t, 6) < 1e-12 * p.max_abs(), "s={s}");
        }
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = CMatrix::from_fn(4, |i, j| c(if i == j { 4.0 } else { 0.5 }, (i as f64) - (j as f64)));
        let b = CMatrix::from_fn(4, |i, j| c((i + j) as f64, 1.0));
        let x = a.solve(&b).unwrap();
        assert!((&a * &x).block_diff(&b, 4) < 1e-13);
    }
}
