use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Below this `|δ²|` the exponential switches to its Taylor form.
pub const CH_SERIES_THRESHOLD: f64 = 1e-12;

/// A 2×2 complex matrix `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2C {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2C {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2C { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Mat2C::new(o, z, z, o)
    }

    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Mat2C::new(z, z, z, z)
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Mat2C::new(d1, z, z, d2)
    }

    pub fn sigma_z() -> Self {
        Mat2C::diag(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))
    }

    /// Validated constructor; rejects non-finite entries.
    pub fn try_new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Result<Self> {
        let m = Mat2C::new(a11, a12, a21, a22);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::InvalidInput("non-finite matrix entry".into()))
        }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn dagger(&self) -> Self {
        Mat2C::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Mat2C::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.norm() == 0.0 {
            return Err(Error::InvalidInput("singular 2×2 matrix".into()));
        }
        Ok(Mat2C::new(self.a22, -self.a12, -self.a21, self.a11).scale(d.inv()))
    }

    pub fn max_abs_diff(&self, other: &Mat2C) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.dagger() * *self).max_abs_diff(&Mat2C::identity()) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    pub fn commutator(&self, other: &Mat2C) -> Mat2C {
        *self * *other - *other * *self
    }

    /// `e^A` by Cayley–Hamilton: with `m = tr A / 2` and `(A - m)^2 = δ² I`,
    /// `e^A = e^m (cosh δ I + sinh δ/δ (A - m))`.
    pub fn exp(&self) -> Mat2C {
        let m = 0.5 * self.trace();
        let b = *self - Mat2C::identity().scale(m);
        let d2 = m * m - self.det();
        let (ch, sh) = if d2.norm() < CH_SERIES_THRESHOLD {
            (1.0 + d2 / 2.0 + d2 * d2 / 24.0, 1.0 + d2 / 6.0 + d2 * d2 / 120.0)
        } else {
            let d = d2.sqrt();
            (d.cosh(), d.sinh() / d)
        };
        (Mat2C::identity().scale(ch) + b.scale(sh)).scale(m.exp())
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, o: Mat2C) -> Mat2C {
        Mat2C::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, o: Mat2C) -> Mat2C {
        Mat2C::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, o: Mat2C) -> Mat2C {
        Mat2C::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}
