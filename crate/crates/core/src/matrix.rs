//! Fixed-size 2×2 complex matrices.
//!
//! Every operator in a single spin-½ system (spin operators, pulse
//! propagators, density matrices) is a 2×2 complex matrix, so a small
//! stack-allocated type covers all the linear algebra needed here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

/// Default tolerance for unitarity, Hermiticity and commutation checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    m: [[C64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a11: C64, a12: C64, a21: C64, a22: C64) -> Self {
        Mat2 {
            m: [[a11, a12], [a21, a22]],
        }
    }

    /// Build a matrix with purely real entries.
    pub const fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2::new(
            C64::new(a11, 0.0),
            C64::new(a12, 0.0),
            C64::new(a21, 0.0),
            C64::new(a22, 0.0),
        )
    }

    pub const fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub const fn zero() -> Self {
        Mat2::real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn diag(d1: C64, d2: C64) -> Self {
        Mat2::new(d1, C64::new(0.0, 0.0), C64::new(0.0, 0.0), d2)
    }

    /// Entry at zero-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m[row][col]
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let [a, b, c, d] = self.entries();
        Mat2::new(f(a), f(b), f(c), f(d))
    }

    /// Largest entry magnitude (the max norm).
    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise distance in the max norm.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Mat2, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    /// `U U† = 1` within `tol` (max norm).
    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.adjoint()).approx_eq(&Mat2::identity(), tol)
    }

    /// Product `U · self · U†`.
    pub fn conjugate_by(&self, u: &Mat2) -> Mat2 {
        *u * *self * u.adjoint()
    }
}

impl Default for Mat2 {
    fn default() -> Self {
        Mat2::zero()
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let [a, b, c, d] = self.entries();
        let [e, f, g, h] = rhs.entries();
        Mat2::new(a + e, b + f, c + g, d + h)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        let [a, b, c, d] = self.entries();
        let [e, f, g, h] = rhs.entries();
        Mat2::new(a - e, b - f, c - g, d - h)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        self.map(|z| -z)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.m;
        let b = &rhs.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_c = |z: C64| format!("{:+.6}{:+.6}i", z.re, z.im);
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            fmt_c(self.m[0][0]),
            fmt_c(self.m[0][1]),
            fmt_c(self.m[1][0]),
            fmt_c(self.m[1][1])
        )
    }
}

/// `AB − BA`.
pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    *a * *b - *b * *a
}

/// True iff every entry of `[A, B]` has magnitude at most `tol`.
pub fn commutes(a: &Mat2, b: &Mat2, tol: f64) -> bool {
    commutator(a, b).max_abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn product_and_adjoint() {
        let a = Mat2::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0));
        let b = Mat2::new(c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let ab = a * b;
        assert_eq!(ab.get(0, 0), c(-1.0, 1.0) + c(2.0, 0.0));
        assert_eq!(ab.get(0, 1), c(1.0, 1.0));
        assert_eq!(ab.get(1, 0), c(1.0, 0.0) + c(3.0, 0.0));
        assert_eq!(ab.get(1, 1), c(0.0, -1.0));
        // (AB)† = B†A†
        assert!((a * b).adjoint().approx_eq(&(b.adjoint() * a.adjoint()), 1e-15));
    }

    #[test]
    fn trace_det_identity() {
        let i = Mat2::identity();
        assert_eq!(i.trace(), c(2.0, 0.0));
        assert_eq!(i.det(), c(1.0, 0.0));
        assert!(i.is_unitary(1e-15));
        assert!(i.is_hermitian(0.0));
        assert!(!Mat2::real(1.0, 1.0, 0.0, 1.0).is_unitary(1e-3));
    }

    #[test]
    fn commutator_of_identity_vanishes() {
        let a = Mat2::new(c(1.0, 2.0), c(3.0, -1.0), c(0.5, 0.0), c(-2.0, 1.0));
        assert!(commutes(&a, &Mat2::identity(), 0.0));
        assert!(!commutes(&a, &Mat2::real(0.0, 1.0, 1.0, 0.0), 1e-9));
    }

    #[test]
    fn non_finite_is_detected() {
        assert!(!Mat2::real(f64::NAN, 0.0, 0.0, 1.0).is_finite());
        assert!(Mat2::identity().is_finite());
    }
}
