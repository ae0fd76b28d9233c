use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{RingKind, Scalar};
use crate::error::{Error, Result};

/// A real quaternion `r0 + r1 i + r2 j + r3 k` with `i² = j² = k² = ijk = −1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl Quaternion {
    pub const fn new(r0: f64, r1: f64, r2: f64, r3: f64) -> Self {
        Self { r0, r1, r2, r3 }
    }

    pub const fn real(r0: f64) -> Self {
        Self::new(r0, 0.0, 0.0, 0.0)
    }

    pub const fn i() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0)
    }

    pub const fn j() -> Self {
        Self::new(0.0, 0.0, 1.0, 0.0)
    }

    pub const fn k() -> Self {
        Self::new(0.0, 0.0, 0.0, 1.0)
    }

    /// Pure imaginary quaternion `v1 i + v2 j + v3 k`.
    pub const fn imaginary(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    pub fn components(&self) -> [f64; 4] {
        [self.r0, self.r1, self.r2, self.r3]
    }

    pub fn from_components(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn conj(&self) -> Self {
        Self::new(self.r0, -self.r1, -self.r2, -self.r3)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.r0 * self.r0 + self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn imag(&self) -> [f64; 3] {
        [self.r1, self.r2, self.r3]
    }

    /// Normalized trace `tr_ℍ`: real-linear, cyclic, `tr_ℍ(1) = 2`, zero on `i, j, k`.
    pub fn trace(&self) -> Complex64 {
        Complex64::new(2.0 * self.r0, 0.0)
    }

    /// The right identification `q = v₁ + v₂ j` with `v₁ = r0 + r1 i`, `v₂ = r2 + r3 i`.
    pub fn to_c2_right(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.r0, self.r1),
            Complex64::new(self.r2, self.r3),
        )
    }

    pub fn from_c2_right(v1: Complex64, v2: Complex64) -> Self {
        Self::new(v1.re, v1.im, v2.re, v2.im)
    }

    /// The left identification `λ = λ₁ − j λ₂`.
    pub fn to_c2_left(&self) -> (Complex64, Complex64) {
        // −jλ₂ = r2 j + r3 k  ⇒  λ₂ = −r2 + r3 i
        (
            Complex64::new(self.r0, self.r1),
            Complex64::new(-self.r2, self.r3),
        )
    }

    pub fn from_c2_left(l1: Complex64, l2: Complex64) -> Self {
        Self::new(l1.re, l1.im, -l2.re, l2.im)
    }

    /// The 2×2 complex matrix `[[w₁, w₂], [−w̄₂, w̄₁]]` of `w = w₁ + w₂ j`.
    ///
    /// Right multiplication `q ↦ q w` acts on row vectors `(v₁, v₂)` of the right
    /// identification by this matrix; left multiplication `λ ↦ w λ` acts on column
    /// vectors `(λ₁, λ₂)` of the left identification by the same matrix.
    pub fn su2_matrix(&self) -> [[Complex64; 2]; 2] {
        let (w1, w2) = self.to_c2_right();
        [[w1, w2], [-w2.conj(), w1.conj()]]
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.r0 + o.r0, self.r1 + o.r1, self.r2 + o.r2, self.r3 + o.r3)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.r0 - o.r0, self.r1 - o.r1, self.r2 - o.r2, self.r3 - o.r3)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.r0, -self.r1, -self.r2, -self.r3)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a0, a1, a2, a3) = (self.r0, self.r1, self.r2, self.r3);
        let (b0, b1, b2, b3) = (o.r0, o.r1, o.r2, o.r3);
        Self::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.r0 * s, self.r1 * s, self.r2 * s, self.r3 * s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.r0, self.r1, self.r2, self.r3)
    }
}

impl Scalar for Quaternion {
    const KIND: RingKind = RingKind::Quaternion;

    fn ring_trace(&self) -> Self {
        Self::real(2.0 * self.r0)
    }
    fn complex_part(&self) -> Complex64 {
        Complex64::new(self.r0, self.r1)
    }

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::real(1.0)
    }
    fn from_real(x: f64) -> Self {
        Self::real(x)
    }
    /// Embeds ℂ as `re + im·i`.
    fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im, 0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.components().iter().all(|&x| x == 0.0)
    }
    fn conj(&self) -> Self {
        Quaternion::conj(self)
    }
    fn scale(&self, s: f64) -> Self {
        *self * s
    }
    fn max_abs(&self) -> f64 {
        Quaternion::max_abs(self)
    }
    fn real_body(&self) -> f64 {
        self.r0
    }
    fn non_real_residual(&self) -> f64 {
        self.r1.abs().max(self.r2.abs()).max(self.r3.abs())
    }
    fn inverse(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(Error::Singular("inverse of quaternion zero".into()));
        }
        Ok(self.conj() * (1.0 / n))
    }
    fn sqrt_positive(&self) -> Result<Self> {
        if self.r0 <= 0.0 || self.non_real_residual() > 1e-12 * self.r0.max(1.0) {
            return Err(Error::Singular(format!(
                "sqrt of quaternion without positive real value: {self}"
            )));
        }
        Ok(Self::real(self.r0.sqrt()))
    }
}
