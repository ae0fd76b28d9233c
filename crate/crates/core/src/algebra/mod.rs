//! Coefficient rings: complex numbers, quaternions and the complexified
//! Grassmann algebra `C_L`, all behind the [`Scalar`] trait.

mod grassmann;
mod quaternion;
mod ring;

pub use grassmann::{GrassmannAlgebra, GrassmannNumber, MAX_GENERATORS};
#[cfg(test)]
pub(crate) use grassmann::gaussian_complex;
pub use quaternion::Quaternion;
pub use ring::{ring_mul, RingElement};

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which coefficient ring a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Complex,
    Quaternion,
    Grassmann,
}

/// Z₂ grading of indices, variables and homogeneous ring elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

/// Uniform interface over the three coefficient rings.
///
/// `conj` is the ring's involution: complex conjugation, quaternionic
/// conjugation, or the even graded involution `∘` on `C_L`. Note that for
/// quaternions it reverses products while on `C_L` it preserves them.
///
/// `grade_flip` is the parity automorphism `x ↦ x₀ − x₁`; it is the identity
/// on the purely even rings and is what a coefficient picks up when an odd
/// symbol is moved past it.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const KIND: RingKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn from_complex(z: Complex64) -> Self;

    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn scale(&self, s: f64) -> Self;

    fn grade_flip(&self) -> Self {
        self.clone()
    }

    fn body(&self) -> Self {
        self.clone()
    }

    /// Grassmann parity of a homogeneous element; `None` when mixed.
    fn homogeneous_parity(&self) -> Option<Parity> {
        Some(Parity::Even)
    }

    /// Largest absolute value among the real components.
    fn max_abs(&self) -> f64;

    /// Real part of the body.
    fn real_body(&self) -> f64;

    /// Size of everything except the real part of the body.
    fn non_real_residual(&self) -> f64 {
        (self.clone() - Self::from_real(self.real_body())).max_abs()
    }

    fn inverse(&self) -> Result<Self>;

    /// Square root of an element whose body is a positive real number.
    fn sqrt_positive(&self) -> Result<Self>;

    /// The ring's own trace: the identity except on ℍ, where it is
    /// `tr_ℍ(q) = 2 r₀`.
    fn ring_trace(&self) -> Self {
        self.clone()
    }

    /// Projection to ℂ: the value itself, `r₀ + r₁ i`, or the body.
    fn complex_part(&self) -> Complex64;
}

impl Scalar for Complex64 {
    fn complex_part(&self) -> Complex64 {
        *self
    }
    const KIND: RingKind = RingKind::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn from_complex(z: Complex64) -> Self {
        z
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn max_abs(&self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
    fn real_body(&self) -> f64 {
        self.re
    }
    fn non_real_residual(&self) -> f64 {
        self.im.abs()
    }
    fn inverse(&self) -> Result<Self> {
        if self.norm_sqr() == 0.0 {
            return Err(Error::Singular("inverse of complex zero".into()));
        }
        Ok(Complex64::new(1.0, 0.0) / self)
    }
    fn sqrt_positive(&self) -> Result<Self> {
        if self.re <= 0.0 {
            return Err(Error::Singular(format!("sqrt of non-positive body {}", self.re)));
        }
        Ok(Complex64::sqrt(*self))
    }
}

/// Sup-norm distance between two slices of ring elements.
pub fn max_abs_diff<R: Scalar>(a: &[R], b: &[R]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).max_abs())
        .fold(0.0, f64::max)
}
