use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Parity, RingKind, Scalar};
use crate::error::{domain, Error, Result};

/// Upper bound on the number of Grassmann generators.
pub const MAX_GENERATORS: usize = 16;

/// An element of the complexified Grassmann algebra.
///
/// Stored sparsely as a map from generator subsets (bit masks, bit `i − 1`
/// standing for `θᵢ`) to complex coefficients; each subset is read as the
/// ascending product `θ_{i₁} θ_{i₂} ⋯`. Exact zeros are pruned.
///
/// Numbers from algebras with different `L` can be mixed freely: `C_L` is
/// embedded in `C_{L'}` for `L ≤ L'` and every value lives in `C_16`.
#[derive(Clone, Default, PartialEq)]
pub struct GrassmannNumber {
    terms: BTreeMap<u32, Complex64>,
}

/// Sign `(−1)^t` where `t` counts the transpositions needed to sort the
/// concatenation of two ascending index sets.
fn merge_sign(left: u32, right: u32) -> f64 {
    let mut swaps = 0u32;
    let mut r = right;
    while r != 0 {
        let j = r.trailing_zeros();
        swaps += (left >> (j + 1)).count_ones();
        r &= r - 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl GrassmannNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Complex64) -> Self {
        let mut out = Self::default();
        out.add_term(0, c);
        out
    }

    pub fn real(x: f64) -> Self {
        Self::scalar(Complex64::new(x, 0.0))
    }

    /// The generator `θᵢ`, `1 ≤ i ≤ 16`.
    pub fn generator(i: usize) -> Result<Self> {
        if i == 0 || i > MAX_GENERATORS {
            return domain(format!("generator index {i} outside 1..={MAX_GENERATORS}"));
        }
        let mut out = Self::default();
        out.add_term(1 << (i - 1), Complex64::new(1.0, 0.0));
        Ok(out)
    }

    /// `c · θ_{i₁} ⋯ θ_{iₙ}` in the given (not necessarily sorted) order.
    pub fn monomial(c: Complex64, indices: &[usize]) -> Result<Self> {
        let mut out = Self::scalar(c);
        for &i in indices {
            out = out * Self::generator(i)?;
        }
        Ok(out)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Complex64)>) -> Self {
        let mut out = Self::default();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, mask: u32, c: Complex64) {
        if c.re == 0.0 && c.im == 0.0 {
            return;
        }
        let e = self.terms.entry(mask).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.re == 0.0 && e.im == 0.0 {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.terms.get(&mask).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coefficient of the empty subset.
    pub fn body(&self) -> Complex64 {
        self.coeff(0)
    }

    pub fn soul(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|(&m, _)| m != 0).map(|(&m, &c)| (m, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest generator index present (0 for pure bodies).
    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(|m| 32 - m.leading_zeros() as usize).max().unwrap_or(0)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(u32) -> bool) -> Self {
        Self {
            terms: self.terms.iter().filter(|(&m, _)| keep(m)).map(|(&m, &c)| (m, c)).collect(),
        }
    }

    /// Parity of a homogeneous element (`None` if mixed; zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut par = None;
        for &m in self.terms.keys() {
            let p = Parity::from_bit((m.count_ones() % 2) as u8);
            match par {
                None => par = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(par.unwrap_or(Parity::Even))
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(m, v)| (m, v * c)))
    }

    /// The even graded involution `∘`.
    ///
    /// On generators `θ_{2i−1}∘ = θ_{2i}`, `θ_{2i}∘ = −θ_{2i−1}`; extended
    /// antilinearly and multiplicatively, `(xy)∘ = x∘ y∘`, so that
    /// `x∘∘ = (−1)^{|x|} x` on homogeneous elements.
    pub fn involution(&self) -> Self {
        let mut out = Self::default();
        for (mask, c) in self.terms() {
            let mut image = Self::scalar(c.conj());
            let mut rest = mask;
            while rest != 0 {
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                let (partner, sign) = if bit % 2 == 0 { (bit + 1, 1.0) } else { (bit - 1, -1.0) };
                image = image * Self::from_terms([(1u32 << partner, Complex64::new(sign, 0.0))]);
            }
            out = out + image;
        }
        out
    }

    /// Grade automorphism `x₀ + x₁ ↦ x₀ − x₁`.
    pub fn grade_flip(&self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|(m, c)| (m, if m.count_ones() % 2 == 1 { -c } else { c })),
        )
    }

    /// `f(body + soul) = Σₖ f⁽ᵏ⁾(body) soulᵏ / k!`, which terminates by nilpotency.
    /// `derivative(k, body)` must return `f⁽ᵏ⁾(body)`.
    pub fn analytic(&self, derivative: impl Fn(usize, Complex64) -> Complex64) -> Self {
        let b = self.body();
        let s = self.soul();
        let mut out = Self::scalar(derivative(0, b));
        let mut power = Self::real(1.0);
        let mut factorial = 1.0;
        for k in 1..=MAX_GENERATORS {
            power = power * s.clone();
            if power.is_zero() {
                break;
            }
            factorial *= k as f64;
            out = out + power.scale_complex(derivative(k, b) / factorial);
        }
        out
    }

    pub fn exp(&self) -> Self {
        self.analytic(|_, b| b.exp())
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.re.abs()).max(c.im.abs()))
    }
}

impl Add for GrassmannNumber {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for GrassmannNumber {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for GrassmannNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for GrassmannNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::default();
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &o.terms {
                if ma & mb != 0 {
                    continue;
                }
                out.add_term(ma | mb, ca * cb * merge_sign(ma, mb));
            }
        }
        out
    }
}

impl From<Complex64> for GrassmannNumber {
    fn from(c: Complex64) -> Self {
        Self::scalar(c)
    }
}

impl fmt::Debug for GrassmannNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GrassmannNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)", c.re, c.im)?;
            let mut rest = m;
            while rest != 0 {
                write!(f, "θ{}", rest.trailing_zeros() + 1)?;
                rest &= rest - 1;
            }
        }
        Ok(())
    }
}

impl Scalar for GrassmannNumber {
    fn complex_part(&self) -> Complex64 {
        GrassmannNumber::body(self)
    }
    const KIND: RingKind = RingKind::Grassmann;

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::real(1.0)
    }
    fn from_real(x: f64) -> Self {
        Self::real(x)
    }
    fn from_complex(z: Complex64) -> Self {
        Self::scalar(z)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn conj(&self) -> Self {
        self.involution()
    }
    fn scale(&self, s: f64) -> Self {
        self.scale_complex(Complex64::new(s, 0.0))
    }
    fn grade_flip(&self) -> Self {
        GrassmannNumber::grade_flip(self)
    }
    fn body(&self) -> Self {
        Self::scalar(GrassmannNumber::body(self))
    }
    fn homogeneous_parity(&self) -> Option<Parity> {
        self.parity()
    }
    fn max_abs(&self) -> f64 {
        GrassmannNumber::max_abs(self)
    }
    fn real_body(&self) -> f64 {
        GrassmannNumber::body(self).re
    }
    fn inverse(&self) -> Result<Self> {
        let b = GrassmannNumber::body(self);
        if b.norm_sqr() == 0.0 {
            return Err(Error::Singular("inverse of a Grassmann number with zero body".into()));
        }
        // (1/z)^{(k)} = (−1)^k k! / z^{k+1}
        Ok(self.analytic(|k, z| {
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * fact, 0.0) / z.powu(k as u32 + 1)
        }))
    }
    fn sqrt_positive(&self) -> Result<Self> {
        let b = GrassmannNumber::body(self);
        if b.re <= 0.0 {
            return Err(Error::Singular(format!("sqrt of Grassmann number with body {b}")));
        }
        // d^k/dz^k z^{1/2} = (1/2)(1/2 − 1)⋯(1/2 − k + 1) z^{1/2 − k}
        Ok(self.analytic(|k, z| {
            let coeff: f64 = (0..k).map(|i| 0.5 - i as f64).product();
            z.powf(0.5 - k as f64) * coeff
        }))
    }
}

const DENSE_LIMIT: usize = 8;

/// Monomials in a random homogeneous element when `L > 8`.
pub const SPARSE_TERMS: usize = 32;

/// The algebra `C_L` with a fixed, even number of generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannAlgebra {
    l: usize,
}

impl GrassmannAlgebra {
    /// `L` must be even (the involution pairs generators) and at most 16.
    pub fn new(l: usize) -> Result<Self> {
        if !(2..=MAX_GENERATORS).contains(&l) || !l.is_multiple_of(2) {
            return domain(format!("Grassmann L must be even in 2..={MAX_GENERATORS}, got {l}"));
        }
        Ok(Self { l })
    }

    pub fn generators(&self) -> usize {
        self.l
    }

    pub fn generator(&self, i: usize) -> Result<GrassmannNumber> {
        if i == 0 || i > self.l {
            return domain(format!("generator θ{i} not in C_{}", self.l));
        }
        GrassmannNumber::generator(i)
    }

    pub fn contains(&self, x: &GrassmannNumber) -> bool {
        x.max_generator() <= self.l
    }

    /// Every monomial `θ_{i₁}⋯θ_{iₙ}` of the algebra, as masks.
    pub fn monomial_masks(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.l)
    }

    /// Random odd element `Σ cᵢ θᵢ` with Gaussian complex coefficients.
    pub fn random_odd_linear<R: Rng + ?Sized>(&self, rng: &mut R, scale: f64) -> GrassmannNumber {
        GrassmannNumber::from_terms((0..self.l).map(|i| (1u32 << i, gaussian_complex(rng) * scale)))
    }

    /// Random element with all `2^L` coefficients Gaussian.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GrassmannNumber {
        GrassmannNumber::from_terms(self.monomial_masks().map(|m| (m, gaussian_complex(rng))))
    }

    /// Random homogeneous element of the given parity: every coefficient
    /// Gaussian up to `L = 8`, beyond that [`SPARSE_TERMS`] random monomials.
    pub fn random_homogeneous<R: Rng + ?Sized>(&self, rng: &mut R, parity: Parity) -> GrassmannNumber {
        let of_parity = |m: &u32| Parity::from_bit((m.count_ones() % 2) as u8) == parity;
        if self.l <= DENSE_LIMIT {
            return GrassmannNumber::from_terms(self.monomial_masks().filter(of_parity).map(|m| (m, gaussian_complex(rng))));
        }
        let mut terms = Vec::with_capacity(SPARSE_TERMS);
        while terms.len() < SPARSE_TERMS {
            let m = rng.random_range(0..(1u32 << self.l));
            if of_parity(&m) {
                terms.push((m, gaussian_complex(rng)));
            }
        }
        GrassmannNumber::from_terms(terms)
    }
}

pub(crate) fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}
