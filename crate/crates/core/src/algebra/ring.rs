use num_complex::Complex64;

use super::{GrassmannNumber, Quaternion, RingKind, Scalar};
use crate::error::{domain, Result};

/// A ring element whose ring is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum RingElement {
    Complex(Complex64),
    Quaternion(Quaternion),
    Grassmann(GrassmannNumber),
}

impl RingElement {
    pub fn kind(&self) -> RingKind {
        match self {
            RingElement::Complex(_) => RingKind::Complex,
            RingElement::Quaternion(_) => RingKind::Quaternion,
            RingElement::Grassmann(_) => RingKind::Grassmann,
        }
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        use RingElement::*;
        Ok(match (self, other) {
            (Complex(a), Complex(b)) => Complex(a * b),
            (Quaternion(a), Quaternion(b)) => Quaternion(*a * *b),
            (Grassmann(a), Grassmann(b)) => Grassmann(a.clone() * b.clone()),
            (a, b) => return domain(format!("cannot multiply {:?} by {:?}", a.kind(), b.kind())),
        })
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        use RingElement::*;
        Ok(match (self, other) {
            (Complex(a), Complex(b)) => Complex(a + b),
            (Quaternion(a), Quaternion(b)) => Quaternion(*a + *b),
            (Grassmann(a), Grassmann(b)) => Grassmann(a.clone() + b.clone()),
            (a, b) => return domain(format!("cannot add {:?} and {:?}", a.kind(), b.kind())),
        })
    }

    pub fn conj(&self) -> RingElement {
        match self {
            RingElement::Complex(a) => RingElement::Complex(a.conj()),
            RingElement::Quaternion(a) => RingElement::Quaternion(a.conj()),
            RingElement::Grassmann(a) => RingElement::Grassmann(a.involution()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            RingElement::Complex(a) => Scalar::max_abs(a),
            RingElement::Quaternion(a) => a.max_abs(),
            RingElement::Grassmann(a) => a.max_abs(),
        }
    }
}

impl From<Complex64> for RingElement {
    fn from(v: Complex64) -> Self {
        RingElement::Complex(v)
    }
}

impl From<Quaternion> for RingElement {
    fn from(v: Quaternion) -> Self {
        RingElement::Quaternion(v)
    }
}

impl From<GrassmannNumber> for RingElement {
    fn from(v: GrassmannNumber) -> Self {
        RingElement::Grassmann(v)
    }
}

/// Product of two run-time ring elements; mixing rings is a domain error.
pub fn ring_mul(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    x.checked_mul(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_rings_rejected() {
        let c = RingElement::from(Complex64::new(1.0, 0.0));
        let q = RingElement::from(Quaternion::i());
        assert!(ring_mul(&c, &q).is_err());
        assert!(c.checked_add(&q).is_err());
        let g = RingElement::from(GrassmannNumber::generator(1).unwrap());
        assert!(ring_mul(&g, &c).is_err());
    }

    #[test]
    fn same_ring_products() {
        let i = RingElement::from(Quaternion::i());
        let j = RingElement::from(Quaternion::j());
        assert_eq!(ring_mul(&i, &j).unwrap(), RingElement::from(Quaternion::k()));
        let t = RingElement::from(GrassmannNumber::generator(1).unwrap());
        assert_eq!(ring_mul(&t, &t).unwrap(), RingElement::from(GrassmannNumber::zero()));
    }
}
