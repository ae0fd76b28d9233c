//! Polynomial differential forms in even coordinates `xᵢ` and odd
//! coordinates `ξ_α` with coefficients in any [`Scalar`] ring.
//!
//! Every generator carries a form degree and a Grassmann parity. Moving `u`
//! past `v` costs `(−1)^{deg u·deg v + par u·par v}`, so the `dxᵢ`
//! anticommute, the `ξ_α` anticommute and the `dξ_α` commute (and have
//! nonzero powers). `d` has degree one and parity zero.

mod matrix;
pub mod quadrature;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use rand::Rng;

use crate::algebra::{GrassmannAlgebra, GrassmannNumber, Parity, Scalar};
use crate::error::{domain, Result};

pub use matrix::{FormMatrix, TraceMode};
pub use quadrature::{gauss_legendre, integrate, integrate_density, volume_form, Integral, Pullback};

/// `Xi(0)` is `ξ₋` and `Xi(1)` is `ξ₊`.
pub const XI_MINUS: Var = Var::Xi(0);
pub const XI_PLUS: Var = Var::Xi(1);

/// Generators of the form algebra, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u8),
    Xi(u8),
    DX(u8),
    DXi(u8),
}

impl Var {
    pub fn degree(self) -> u32 {
        match self {
            Var::X(_) | Var::Xi(_) => 0,
            Var::DX(_) | Var::DXi(_) => 1,
        }
    }

    pub fn parity(self) -> u32 {
        match self {
            Var::X(_) | Var::DX(_) => 0,
            Var::Xi(_) | Var::DXi(_) => 1,
        }
    }

    pub fn is_odd_coordinate(self) -> bool {
        matches!(self, Var::Xi(_) | Var::DXi(_))
    }

    /// Whether `v·v ≠ 0` is allowed.
    pub fn has_powers(self) -> bool {
        (self.degree() + self.parity()).is_multiple_of(2)
    }

    pub fn differential(self) -> Option<Var> {
        match self {
            Var::X(i) => Some(Var::DX(i)),
            Var::Xi(i) => Some(Var::DXi(i)),
            _ => None,
        }
    }

    fn swap_exponent(self, other: Var) -> u32 {
        self.degree() * other.degree() + self.parity() * other.parity()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xi = |i: u8| match i {
            0 => "ξ₋".to_string(),
            1 => "ξ₊".to_string(),
            n => format!("ξ{n}"),
        };
        match *self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Xi(i) => f.write_str(&xi(i)),
            Var::DX(i) => write!(f, "dx{i}"),
            Var::DXi(i) => write!(f, "d{}", xi(i)),
        }
    }
}

/// Canonically ordered product of generators with positive powers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Product of the listed generators in the given order, with its sign.
    pub fn from_word(word: &[Var]) -> Option<(f64, Monomial)> {
        word.iter().try_fold((1.0, Monomial::one()), |(s, m), &v| {
            m.mul(&Monomial::var(v)).map(|(t, m)| (s * t, m))
        })
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(v, k)| v.degree() * k).sum()
    }

    pub fn parity(&self) -> u32 {
        self.0.iter().map(|(v, k)| v.parity() * k).sum::<u32>() % 2
    }

    pub fn contains_odd(&self) -> bool {
        self.0.iter().any(|(v, _)| v.is_odd_coordinate())
    }

    pub fn power_of(&self, v: Var) -> u32 {
        self.0.iter().find(|(u, _)| *u == v).map_or(0, |(_, k)| *k)
    }

    /// `self · other` brought to canonical order: `None` if it vanishes.
    pub fn mul(&self, other: &Monomial) -> Option<(f64, Monomial)> {
        let mut exponent = 0u32;
        for &(v, k) in &other.0 {
            for &(u, m) in self.0.iter().filter(|(u, _)| *u > v) {
                exponent += k * m * u.swap_exponent(v);
            }
        }
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take_left = j == other.0.len() || (i < self.0.len() && self.0[i].0 <= other.0[j].0);
            let (v, k) = if take_left {
                i += 1;
                self.0[i - 1]
            } else {
                j += 1;
                other.0[j - 1]
            };
            match out.last_mut() {
                Some((u, m)) if *u == v => {
                    if !v.has_powers() {
                        return None;
                    }
                    *m += k;
                }
                _ => out.push((v, k)),
            }
        }
        let sign = if exponent.is_multiple_of(2) { 1.0 } else { -1.0 };
        Some((sign, Monomial(out)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A finite sum `Σ c·m` of coefficient times canonical monomial.
#[derive(Clone, PartialEq)]
pub struct GradedForm<R: Scalar> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Scalar> Default for GradedForm<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Scalar> GradedForm<R> {
    pub fn zero() -> Self {
        GradedForm { terms: BTreeMap::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn real(x: f64) -> Self {
        Self::constant(R::from_real(x))
    }

    pub fn var(v: Var) -> Self {
        Self::term(R::one(), Monomial::var(v))
    }

    pub fn x(i: u8) -> Self {
        Self::var(Var::X(i))
    }

    pub fn xi(i: u8) -> Self {
        Self::var(Var::Xi(i))
    }

    pub fn term(c: R, m: Monomial) -> Self {
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    /// `c` times the product of the listed generators, in that order.
    pub fn word(c: R, word: &[Var]) -> Self {
        match Monomial::from_word(word) {
            Some((s, m)) => Self::term(c.scale(s), m),
            None => Self::zero(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Form degree if every term has the same degree; `Some(0)` for zero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Scalar::max_abs).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).max_abs()
    }

    /// Drops terms whose coefficient is below `tol` in every component.
    pub fn prune(&self, tol: f64) -> Self {
        GradedForm { terms: self.terms.iter().filter(|(_, c)| c.max_abs() > tol).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn map_coeffs<S: Scalar>(&self, f: impl Fn(&R) -> S) -> GradedForm<S> {
        let mut out = GradedForm::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    /// `c · self` with `c` placed on the left.
    pub fn left_mul(&self, c: &R) -> Self {
        self.map_coeffs(|v| c.clone() * v.clone())
    }

    /// Graded-commutative product.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            let odd = m1.parity() == 1;
            for (m2, c2) in &other.terms {
                if let Some((s, m)) = m1.mul(m2) {
                    let c2 = if odd { c2.grade_flip() } else { c2.clone() };
                    out.add_term(m, (c1.clone() * c2).scale(s));
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let factors = m.factors();
            let mut passed_degree = 0;
            for (i, &(v, k)) in factors.iter().enumerate() {
                if let Some(dv) = v.differential() {
                    let mut left = factors[..i].to_vec();
                    if k > 1 {
                        left.push((v, k - 1));
                    }
                    let right = Monomial(factors[i + 1..].to_vec());
                    let chain = Monomial(left)
                        .mul(&Monomial::var(dv))
                        .and_then(|(s1, lm)| lm.mul(&right).map(|(s2, m)| (s1 * s2, m)));
                    if let Some((s, mono)) = chain {
                        let sign = if passed_degree % 2 == 0 { 1.0 } else { -1.0 };
                        out.add_term(mono, c.scale(s * sign * k as f64));
                    }
                }
                passed_degree += v.degree() * k;
            }
        }
        out
    }

    /// Keeps terms free of `ξ` and `dξ` and replaces each coefficient by its
    /// complex body: the natural map from superforms to forms on the body.
    pub fn body_project(&self) -> GradedForm<Complex64> {
        let mut out = GradedForm::zero();
        for (m, c) in &self.terms {
            if !m.contains_odd() {
                out.add_term(m.clone(), c.complex_part());
            }
        }
        out
    }

    /// Replaces coordinates `x`, `ξ` by forms (and their differentials by
    /// the differentials of the replacements). Unmapped generators stay.
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<GradedForm<R>>) -> Self {
        let image = |v: Var| -> GradedForm<R> {
            match v {
                Var::X(_) | Var::Xi(_) => map(v).unwrap_or_else(|| Self::var(v)),
                Var::DX(i) => map(Var::X(i)).map_or_else(|| Self::var(v), |f| f.d()),
                Var::DXi(i) => map(Var::Xi(i)).map_or_else(|| Self::var(v), |f| f.d()),
            }
        };
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for &(v, k) in m.factors() {
                let f = image(v);
                for _ in 0..k {
                    acc = acc.wedge(&f);
                }
            }
            out = out + acc;
        }
        out
    }

    /// Value of a 0-form at a point, with `value` giving the coordinates in
    /// a ring `S` and `lift` embedding coefficients.
    pub fn evaluate<S: Scalar>(&self, lift: impl Fn(&R) -> S, value: impl Fn(Var) -> S) -> Result<S> {
        let mut total = S::zero();
        for (m, c) in &self.terms {
            if m.degree() != 0 {
                return domain(format!("cannot evaluate a form of degree {} pointwise", m.degree()));
            }
            let mut t = lift(c);
            for &(v, k) in m.factors() {
                let x = value(v);
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Splits off the coefficient polynomials of each pure-differential
    /// monomial: `self = Σ_I P_I · dx_I`.
    pub fn by_differential(&self) -> BTreeMap<Monomial, GradedForm<R>> {
        let mut out: BTreeMap<Monomial, GradedForm<R>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (coord, diff): (Vec<_>, Vec<_>) = m.factors().iter().partition(|(v, _)| v.degree() == 0);
            out.entry(Monomial(diff)).or_default().add_term(Monomial(coord), c.clone());
        }
        out
    }
}

impl<R: Scalar> Add for GradedForm<R> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<R: Scalar> Sub for GradedForm<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Scalar> Neg for GradedForm<R> {
    type Output = Self;
    fn neg(self) -> Self {
        GradedForm { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<R: Scalar> Mul for GradedForm<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.wedge(&o)
    }
}

/// Random polynomial form in `x, ξ, dx, dξ` with up to three factors per
/// term and homogeneous Grassmann coefficients.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, alg: &GrassmannAlgebra, terms: usize) -> GradedForm<GrassmannNumber> {
    let pool = [Var::X(0), Var::X(1), Var::X(2), Var::Xi(0), Var::Xi(1), Var::DX(0), Var::DX(1), Var::DX(2), Var::DXi(0), Var::DXi(1)];
    let mut f = GradedForm::zero();
    for _ in 0..terms {
        let len = rng.random_range(0..4);
        let word: Vec<Var> = (0..len).map(|_| pool[rng.random_range(0..pool.len())]).collect();
        let p = if rng.random_bool(0.5) { Parity::Even } else { Parity::Odd };
        f = f + GradedForm::word(alg.random_homogeneous(rng, p), &word);
    }
    f
}

impl<R: Scalar> fmt::Debug for GradedForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c:?}) {m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quaternion;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = GradedForm<Complex64>;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn leibniz_on_product_of_coordinates() {
        let f = F::x(1) * F::x(2);
        let expect = F::x(2) * F::var(Var::DX(1)) + F::x(1) * F::var(Var::DX(2));
        assert_eq!(f.d(), expect);
    }

    #[test]
    fn d_of_xi_minus_xi_plus() {
        let f = F::xi(0) * F::xi(1);
        let dm = F::var(Var::DXi(0));
        let dp = F::var(Var::DXi(1));
        // d is even and of degree one, so it passes ξ₋ without a sign
        let expect = dm * F::xi(1) + F::xi(0) * dp;
        assert_eq!(f.d(), expect);
        // transposition count: moving dξ₋ past ξ₊ costs (−1)^{0·1+1·1}
        let (s, _) = Monomial::from_word(&[Var::DXi(0), Var::Xi(1)]).unwrap();
        assert_eq!(s, -1.0);
    }

    #[test]
    fn d_squared_example() {
        let f = F::x(0) * F::xi(1);
        assert!(f.d().d().is_empty());
    }

    #[test]
    fn square_rules() {
        let dx = F::var(Var::DX(1));
        assert!((dx.clone() * dx).is_empty());
        let dxi = F::var(Var::DXi(1));
        let sq = dxi.clone() * dxi;
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.terms().next().unwrap().0.power_of(Var::DXi(1)), 2);
        let xi = F::xi(0);
        assert!((xi.clone() * xi).is_empty());
        assert_eq!(F::x(0) * F::x(0), F::term(c(1.0), Monomial(vec![(Var::X(0), 2)])));
    }

    #[test]
    fn quaternion_coefficients_keep_order() {
        type Q = GradedForm<Quaternion>;
        let a = Q::word(Quaternion::i(), &[Var::DX(1)]);
        let b = Q::word(Quaternion::j(), &[Var::DX(2)]);
        assert_eq!(a.wedge(&b), Q::word(Quaternion::k(), &[Var::DX(1), Var::DX(2)]));
        assert_eq!(b.wedge(&a), Q::word(-Quaternion::k(), &[Var::DX(2), Var::DX(1)]));
        assert_eq!(b.wedge(&a), Q::word(Quaternion::k(), &[Var::DX(1), Var::DX(2)]));
    }

    #[test]
    fn odd_coefficient_passes_odd_monomial() {
        type G = GradedForm<GrassmannNumber>;
        let th = GrassmannNumber::generator(1).unwrap();
        // ξ₋ · (θ₁ ξ₊) = −θ₁ ξ₋ ξ₊
        let lhs = G::xi(0).wedge(&G::xi(1).left_mul(&th));
        let rhs = G::word(-th, &[Var::Xi(0), Var::Xi(1)]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn body_projection() {
        let f = F::word(c(2.0), &[Var::Xi(0), Var::DXi(1)]) + F::word(c(1.0), &[Var::X(0), Var::DX(1), Var::DX(2)]);
        let b = f.body_project();
        assert_eq!(b, F::word(c(1.0), &[Var::X(0), Var::DX(1), Var::DX(2)]));
        assert_eq!(b.body_project(), b);
        assert!(F::word(c(1.0), &[Var::Xi(0), Var::DXi(1)]).body_project().is_empty());
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = F::x(0) * F::x(2) + F::var(Var::DX(2));
        let g = f.substitute(&|v| (v == Var::X(2)).then(|| -F::x(2)));
        assert_eq!(g, -(F::x(0) * F::x(2)) - F::var(Var::DX(2)));
        let v = (F::x(0) * F::x(1) + F::real(2.0)).evaluate(|c| *c, |v| match v {
            Var::X(0) => c(3.0),
            _ => c(5.0),
        });
        assert_eq!(v.unwrap(), c(17.0));
        assert!(F::var(Var::DX(0)).evaluate(|c| *c, |_| c(1.0)).is_err());
    }

    #[test]
    fn d_squared_and_leibniz_random() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = random_form(&mut rng, &alg, 4);
            let b = random_form(&mut rng, &alg, 4);
            assert!(a.d().d().max_abs() < 1e-13);
            // Leibniz on homogeneous-degree pieces of a
            for (m, ca) in a.terms() {
                let t = GradedForm::term(ca.clone(), m.clone());
                let sign = if m.degree() % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = t.wedge(&b).d();
                let rhs = t.d().wedge(&b) + t.wedge(&b.d()).scale(sign);
                assert!(lhs.max_abs_diff(&rhs) < 1e-13);
            }
        }
    }

    #[test]
    fn associativity_random() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = random_form(&mut rng, &alg, 3);
            let b = random_form(&mut rng, &alg, 3);
            let e = random_form(&mut rng, &alg, 3);
            let l = a.wedge(&b).wedge(&e);
            let r = a.wedge(&b.wedge(&e));
            assert!(l.max_abs_diff(&r) < 1e-12);
        }
    }

    #[test]
    fn degree_reporting() {
        assert_eq!(F::zero().degree(), Some(0));
        assert_eq!((F::x(0) + F::var(Var::DX(0))).degree(), None);
        assert_eq!(F::word(c(1.0), &[Var::DX(0), Var::DXi(1)]).degree(), Some(2));
    }
}
