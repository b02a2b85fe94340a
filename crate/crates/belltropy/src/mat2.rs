//! 2x2 complex matrices, row-major. The shared container for state
//! construction and the logarithm/exponential machinery; no structural
//! invariants are imposed here, so values may be non-Hermitian or singular.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type C64 = Complex64;

/// General 2x2 complex matrix.
///
/// Serializes as a row-major 2x2 array of `[re, im]` pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    entries: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(entries: [[C64; 2]; 2]) -> Self {
        Mat2 { entries }
    }

    /// Matrix with real entries.
    pub fn from_real(entries: [[f64; 2]; 2]) -> Self {
        Mat2::new([
            [C64::new(entries[0][0], 0.0), C64::new(entries[0][1], 0.0)],
            [C64::new(entries[1][0], 0.0), C64::new(entries[1][1], 0.0)],
        ])
    }

    pub fn from_cols(c0: (C64, C64), c1: (C64, C64)) -> Self {
        Mat2::new([[c0.0, c1.0], [c0.1, c1.1]])
    }

    pub fn zero() -> Self {
        Mat2::from_real([[0.0, 0.0], [0.0, 0.0]])
    }

    pub fn identity() -> Self {
        Mat2::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn diag(d0: C64, d1: C64) -> Self {
        let zero = C64::new(0.0, 0.0);
        Mat2::new([[d0, zero], [zero, d1]])
    }

    pub fn trace(&self) -> C64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> C64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new([
            [self.entries[0][0].conj(), self.entries[1][0].conj()],
            [self.entries[0][1].conj(), self.entries[1][1].conj()],
        ])
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(C64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: C64) -> Self {
        let e = &self.entries;
        Mat2::new([[e[0][0] * s, e[0][1] * s], [e[1][0] * s, e[1][1] * s]])
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let e = &self.entries;
        e[0][0].im.abs() <= tol
            && e[1][1].im.abs() <= tol
            && (e[0][1] - e[1][0].conj()).norm() <= tol
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.iter().map(C64::norm).fold(0.0, f64::max)
    }

    /// Largest imaginary-part magnitude across entries.
    pub fn max_imag(&self) -> f64 {
        self.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        self.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise difference from `other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Mat2, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    fn iter(&self) -> impl Iterator<Item = C64> + '_ {
        self.entries.iter().flatten().copied()
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.entries, &rhs.entries);
        Mat2::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.entries, &rhs.entries);
        Mat2::new([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.entries, &rhs.entries);
        Mat2::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let e = &self.entries;
        let raw: [[[f64; 2]; 2]; 2] = [
            [[e[0][0].re, e[0][0].im], [e[0][1].re, e[0][1].im]],
            [[e[1][0].re, e[1][0].im], [e[1][1].re, e[1][1].im]],
        ];
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = <[[[f64; 2]; 2]; 2]>::deserialize(deserializer)?;
        Ok(Mat2::new([
            [
                C64::new(raw[0][0][0], raw[0][0][1]),
                C64::new(raw[0][1][0], raw[0][1][1]),
            ],
            [
                C64::new(raw[1][0][0], raw[1][0][1]),
                C64::new(raw[1][1][0], raw[1][1][1]),
            ],
        ]))
    }
}
