//! The three principal fibrations in coordinates: total-space points, Hopf
//! projections, kets, fiber actions, equivariant maps, charts and sampling.

pub mod charts;
pub mod sections;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GrassmannAlgebra, GrassmannNumber, Parity, Quaternion, RingElement, Scalar};
use crate::error::{domain, Error, Result};
use crate::supermatrix::{GradedMatrix, SuperU1Element, SIGNATURE_1_2};

pub use charts::{chart_for, Chart};
pub use sections::{local_ket, KetJet};

/// Tolerance for accepting a point as lying on its constraint surface.
pub const CONSTRAINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Monopole,
    Graded,
    Instanton,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::Monopole, Case::Graded, Case::Instanton];

    pub fn as_str(self) -> &'static str {
        match self {
            Case::Monopole => "monopole",
            Case::Graded => "graded",
            Case::Instanton => "instanton",
        }
    }

    /// Real dimension of the (body of the) base sphere.
    pub fn base_dim(self) -> usize {
        match self {
            Case::Monopole | Case::Graded => 2,
            Case::Instanton => 4,
        }
    }

    /// Index parities of the ket.
    pub fn signature(self) -> Vec<Parity> {
        match self {
            Case::Graded => SIGNATURE_1_2.to_vec(),
            _ => vec![Parity::Even; 2],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monopole" => Ok(Case::Monopole),
            "graded" => Ok(Case::Graded),
            "instanton" => Ok(Case::Instanton),
            other => Err(Error::Lookup(format!("unknown case `{other}`"))),
        }
    }
}

/// A point of `S³ ⊂ ℂ²`, of `UOSP(1,2)` (as `(a, b, η)`), or of `S⁷ ⊂ ℍ²`.
#[derive(Debug, Clone, PartialEq)]
pub enum TotalPoint {
    Monopole { a: Complex64, b: Complex64 },
    Graded { a: GrassmannNumber, b: GrassmannNumber, eta: GrassmannNumber },
    Instanton { a: Quaternion, b: Quaternion },
}

/// A point of `S²`, `S^{2,2}` or `S⁴`.
#[derive(Debug, Clone, PartialEq)]
pub enum BasePoint {
    Monopole([f64; 3]),
    Graded { x: [GrassmannNumber; 3], xi_minus: GrassmannNumber, xi_plus: GrassmannNumber },
    Instanton([f64; 5]),
}

/// The ket `|ψ⟩` as a column over the case ring.
#[derive(Debug, Clone, PartialEq)]
pub enum Ket {
    Complex(GradedMatrix<Complex64>),
    Grassmann(GradedMatrix<GrassmannNumber>),
    Quaternion(GradedMatrix<Quaternion>),
}

/// Element of the structure group acting on the right.
#[derive(Debug, Clone, PartialEq)]
pub enum FiberElement {
    U1(Complex64),
    SuperU1(GrassmannNumber),
    Sp1(Quaternion),
}

impl From<&SuperU1Element> for FiberElement {
    fn from(w: &SuperU1Element) -> Self {
        FiberElement::SuperU1(w.value())
    }
}

/// Basic invariant functions on the total space.
#[derive(Debug, Clone, PartialEq)]
pub enum Invariants {
    Complex { a_sq: f64, b_sq: f64, a_bbar: Complex64 },
    Quaternion { a_sq: f64, b_sq: f64, a_bbar: Quaternion },
    Graded {
        a_ad: GrassmannNumber,
        b_bd: GrassmannNumber,
        a_bd: GrassmannNumber,
        eta_ad: GrassmannNumber,
        eta_bd: GrassmannNumber,
        quarter_eta_etad: GrassmannNumber,
    },
}

fn gr(re: f64, im: f64) -> GrassmannNumber {
    GrassmannNumber::scalar(Complex64::new(re, im))
}

fn is_of(x: &GrassmannNumber, p: Parity) -> bool {
    x.is_zero() || x.parity() == Some(p)
}

impl TotalPoint {
    pub fn monopole(a: Complex64, b: Complex64) -> Result<Self> {
        let t = TotalPoint::Monopole { a, b };
        t.check()?;
        Ok(t)
    }

    pub fn graded(a: GrassmannNumber, b: GrassmannNumber, eta: GrassmannNumber) -> Result<Self> {
        let t = TotalPoint::Graded { a, b, eta };
        t.check()?;
        Ok(t)
    }

    pub fn instanton(a: Quaternion, b: Quaternion) -> Result<Self> {
        let t = TotalPoint::Instanton { a, b };
        t.check()?;
        Ok(t)
    }

    pub fn case(&self) -> Case {
        match self {
            TotalPoint::Monopole { .. } => Case::Monopole,
            TotalPoint::Graded { .. } => Case::Graded,
            TotalPoint::Instanton { .. } => Case::Instanton,
        }
    }

    /// Deviation from `|a|² + |b|² = 1` (or `a a∘ + b b∘ = 1`).
    pub fn constraint_residual(&self) -> f64 {
        match self {
            TotalPoint::Monopole { a, b } => (a.norm_sqr() + b.norm_sqr() - 1.0).abs(),
            TotalPoint::Graded { a, b, .. } => {
                (a.clone() * a.involution() + b.clone() * b.involution() - gr(1.0, 0.0)).max_abs()
            }
            TotalPoint::Instanton { a, b } => (a.norm_sqr() + b.norm_sqr() - 1.0).abs(),
        }
    }

    fn check(&self) -> Result<()> {
        if let TotalPoint::Graded { a, b, eta } = self {
            if !is_of(a, Parity::Even) || !is_of(b, Parity::Even) || !is_of(eta, Parity::Odd) {
                return domain("graded point needs a, b even and η odd");
            }
        }
        let r = self.constraint_residual();
        if !(r <= CONSTRAINT_TOL) {
            return domain(format!("{} point off its constraint by {r:.3e}", self.case()));
        }
        Ok(())
    }
}

/// The Hopf projection `π : total space → base`.
pub fn hopf_project(t: &TotalPoint) -> Result<BasePoint> {
    t.check()?;
    Ok(match t {
        TotalPoint::Monopole { a, b } => {
            let abar = a * b.conj();
            BasePoint::Monopole([a.norm_sqr() - b.norm_sqr(), 2.0 * abar.re, -2.0 * abar.im])
        }
        TotalPoint::Graded { a, b, eta } => {
            let (ad, bd, ed) = (a.involution(), b.involution(), eta.involution());
            let f = gr(1.0, 0.0) - (eta.clone() * ed.clone()).scale(0.25);
            let abd = a.clone() * bd.clone();
            let bad = b.clone() * ad.clone();
            let x0 = (a.clone() * ad.clone() - b.clone() * bd.clone()) * f.clone();
            let x1 = (abd.clone() + bad.clone()) * f.clone();
            let x2 = (abd - bad).scale_complex(Complex64::new(0.0, 1.0)) * f;
            let xi_minus = (a.clone() * ed.clone() + eta.clone() * bd).scale(-0.5);
            let xi_plus = (eta.clone() * ad - b.clone() * ed).scale(0.5);
            BasePoint::Graded { x: [x0, x1, x2], xi_minus, xi_plus }
        }
        TotalPoint::Instanton { a, b } => {
            let abar = *a * b.conj();
            let xi = abar - abar.conj();
            let x4 = abar + abar.conj();
            BasePoint::Instanton([a.norm_sqr() - b.norm_sqr(), xi.r1, xi.r2, xi.r3, x4.r0])
        }
    })
}

impl BasePoint {
    pub fn case(&self) -> Case {
        match self {
            BasePoint::Monopole(_) => Case::Monopole,
            BasePoint::Graded { .. } => Case::Graded,
            BasePoint::Instanton(_) => Case::Instanton,
        }
    }

    /// Deviation from `Σ xᵢ² = 1` (plus `2ξ₋ξ₊` in the graded case).
    pub fn constraint_residual(&self) -> f64 {
        match self {
            BasePoint::Monopole(x) => (x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs(),
            BasePoint::Instanton(x) => (x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs(),
            BasePoint::Graded { x, xi_minus, xi_plus } => {
                let s = x.iter().fold(GrassmannNumber::zero(), |acc, v| acc + v.clone() * v.clone())
                    + (xi_minus.clone() * xi_plus.clone()).scale(2.0);
                (s - gr(1.0, 0.0)).max_abs()
            }
        }
    }

    /// Real body coordinates.
    pub fn body(&self) -> Vec<f64> {
        match self {
            BasePoint::Monopole(x) => x.to_vec(),
            BasePoint::Instanton(x) => x.to_vec(),
            BasePoint::Graded { x, .. } => x.iter().map(|v| v.body().re).collect(),
        }
    }
}

/// Invariant functions read off the base point by inverting the projection.
pub fn invariants_from_base(x: &BasePoint) -> Invariants {
    match x {
        BasePoint::Monopole([x0, x1, x2]) => Invariants::Complex {
            a_sq: 0.5 * (1.0 + x0),
            b_sq: 0.5 * (1.0 - x0),
            a_bbar: Complex64::new(0.5 * x1, -0.5 * x2),
        },
        BasePoint::Instanton([x0, x1, x2, x3, x4]) => Invariants::Quaternion {
            a_sq: 0.5 * (1.0 + x0),
            b_sq: 0.5 * (1.0 - x0),
            a_bbar: Quaternion::new(*x4, *x1, *x2, *x3) * 0.5,
        },
        BasePoint::Graded { x, xi_minus, xi_plus } => {
            let [x0, x1, x2] = x.clone();
            let one = gr(1.0, 0.0);
            let i = Complex64::new(0.0, 1.0);
            let mm = xi_minus.clone() * xi_plus.clone();
            let g = one.clone() + mm.clone();
            let z = x1.clone() + x2.scale_complex(i);
            let zb = x1 - x2.scale_complex(i);
            Invariants::Graded {
                a_ad: (one.clone() + x0.clone() * g.clone()).scale(0.5),
                b_bd: (one.clone() - x0.clone() * g.clone()).scale(0.5),
                a_bd: (zb.clone() * g).scale(0.5),
                eta_ad: -(z.clone() * xi_minus.clone()) + (one.clone() + x0.clone()) * xi_plus.clone(),
                eta_bd: zb * xi_plus.clone() - (one - x0) * xi_minus.clone(),
                quarter_eta_etad: mm,
            }
        }
    }
}

/// The same invariants computed directly on the total space.
pub fn invariants_direct(t: &TotalPoint) -> Invariants {
    match t {
        TotalPoint::Monopole { a, b } => {
            Invariants::Complex { a_sq: a.norm_sqr(), b_sq: b.norm_sqr(), a_bbar: a * b.conj() }
        }
        TotalPoint::Instanton { a, b } => {
            Invariants::Quaternion { a_sq: a.norm_sqr(), b_sq: b.norm_sqr(), a_bbar: *a * b.conj() }
        }
        TotalPoint::Graded { a, b, eta } => {
            let (ad, bd) = (a.involution(), b.involution());
            Invariants::Graded {
                a_ad: a.clone() * ad.clone(),
                b_bd: b.clone() * bd.clone(),
                a_bd: a.clone() * bd.clone(),
                eta_ad: eta.clone() * ad,
                eta_bd: eta.clone() * bd,
                quarter_eta_etad: (eta.clone() * eta.involution()).scale(0.25),
            }
        }
    }
}

impl Invariants {
    /// Largest difference between two invariant records of the same kind.
    pub fn max_abs_diff(&self, other: &Invariants) -> f64 {
        use Invariants::*;
        match (self, other) {
            (Complex { a_sq, b_sq, a_bbar }, Complex { a_sq: a2, b_sq: b2, a_bbar: c2 }) => {
                (a_sq - a2).abs().max((b_sq - b2).abs()).max((a_bbar - c2).norm())
            }
            (Quaternion { a_sq, b_sq, a_bbar }, Quaternion { a_sq: a2, b_sq: b2, a_bbar: c2 }) => {
                (a_sq - a2).abs().max((b_sq - b2).abs()).max((*a_bbar - *c2).max_abs())
            }
            (
                Graded { a_ad, b_bd, a_bd, eta_ad, eta_bd, quarter_eta_etad },
                Graded {
                    a_ad: a2,
                    b_bd: b2,
                    a_bd: c2,
                    eta_ad: e2,
                    eta_bd: f2,
                    quarter_eta_etad: q2,
                },
            ) => [
                (a_ad, a2),
                (b_bd, b2),
                (a_bd, c2),
                (eta_ad, e2),
                (eta_bd, f2),
                (quarter_eta_etad, q2),
            ]
            .iter()
            .map(|(x, y)| ((*x).clone() - (*y).clone()).max_abs())
            .fold(0.0, f64::max),
            _ => f64::INFINITY,
        }
    }
}

/// The normalized ket attached to a total-space point.
pub fn standard_ket(t: &TotalPoint) -> Ket {
    match t {
        TotalPoint::Monopole { a, b } => {
            Ket::Complex(GradedMatrix::column(Case::Monopole.signature(), vec![*a, *b]).expect("2x1"))
        }
        TotalPoint::Instanton { a, b } => {
            Ket::Quaternion(GradedMatrix::column(Case::Instanton.signature(), vec![*a, *b]).expect("2x1"))
        }
        TotalPoint::Graded { a, b, eta } => {
            let f = gr(1.0, 0.0) - (eta.clone() * eta.involution()).scale(0.125);
            Ket::Grassmann(
                GradedMatrix::column(
                    SIGNATURE_1_2.to_vec(),
                    vec![eta.scale(-0.5), a.clone() * f.clone(), b.clone() * f],
                )
                .expect("3x1"),
            )
        }
    }
}

impl Ket {
    /// `⟨ψ|ψ⟩ − 1`, as a max-abs residual.
    pub fn normalization_residual(&self) -> f64 {
        fn res<R: Scalar>(k: &GradedMatrix<R>) -> f64 {
            let n = k.super_dagger().matmul(k).expect("bra-ket");
            (n.get(0, 0).clone() - R::one()).max_abs()
        }
        match self {
            Ket::Complex(k) => res(k),
            Ket::Grassmann(k) => res(k),
            Ket::Quaternion(k) => res(k),
        }
    }

    pub fn max_abs_diff(&self, other: &Ket) -> f64 {
        match (self, other) {
            (Ket::Complex(a), Ket::Complex(b)) => a.max_abs_diff(b),
            (Ket::Grassmann(a), Ket::Grassmann(b)) => a.max_abs_diff(b),
            (Ket::Quaternion(a), Ket::Quaternion(b)) => a.max_abs_diff(b),
            _ => f64::INFINITY,
        }
    }

    /// Componentwise right multiplication `|ψ⟩ w`.
    pub fn right_mul(&self, w: &FiberElement) -> Result<Ket> {
        Ok(match (self, w) {
            (Ket::Complex(k), FiberElement::U1(w)) => Ket::Complex(k.right_scale(w)),
            (Ket::Grassmann(k), FiberElement::SuperU1(w)) => Ket::Grassmann(k.right_scale(w)),
            (Ket::Quaternion(k), FiberElement::Sp1(w)) => Ket::Quaternion(k.right_scale(w)),
            _ => return domain("fiber element does not match the ket's ring"),
        })
    }
}

impl FiberElement {
    pub fn unit_residual(&self) -> f64 {
        match self {
            FiberElement::U1(w) => (w.norm_sqr() - 1.0).abs(),
            FiberElement::Sp1(w) => (w.norm_sqr() - 1.0).abs(),
            FiberElement::SuperU1(w) => (w.clone() * w.involution() - gr(1.0, 0.0)).max_abs(),
        }
    }
}

/// Right action `(a, b) w = (aw, bw)`, and `s(a, b, η) w = s(aw, bw, ηw)`.
pub fn right_action(t: &TotalPoint, w: &FiberElement) -> Result<TotalPoint> {
    let r = w.unit_residual();
    if !(r <= CONSTRAINT_TOL) {
        return domain(format!("fiber element is not unit (residual {r:.3e})"));
    }
    if let FiberElement::SuperU1(w) = w {
        if !is_of(w, Parity::Even) {
            return domain("𝒰(1) element must be even");
        }
    }
    match (t, w) {
        (TotalPoint::Monopole { a, b }, FiberElement::U1(w)) => TotalPoint::monopole(a * w, b * w),
        (TotalPoint::Instanton { a, b }, FiberElement::Sp1(w)) => TotalPoint::instanton(*a * *w, *b * *w),
        (TotalPoint::Graded { a, b, eta }, FiberElement::SuperU1(w)) => {
            TotalPoint::graded(a.clone() * w.clone(), b.clone() * w.clone(), eta.clone() * w.clone())
        }
        _ => domain(format!("fiber element does not act on the {} total space", t.case())),
    }
}

/// `φ = ⟨ψ|f⟩` for a list of invariant (base) function values `f`.
pub fn equivariant_from_sections(f: &[RingElement], t: &TotalPoint) -> Result<RingElement> {
    let ket = standard_ket(t);
    let n = t.case().signature().len();
    if f.len() != n {
        return domain(format!("{} case takes {n} section components, got {}", t.case(), f.len()));
    }
    fn pair<R: Scalar>(ket: &GradedMatrix<R>, f: Vec<R>) -> R {
        let bra = ket.super_dagger();
        f.into_iter().enumerate().fold(R::zero(), |acc, (i, v)| acc + bra.get(0, i).clone() * v)
    }
    let wrong = || Error::Domain(format!("section components must lie in the {} ring", t.case()));
    Ok(match ket {
        Ket::Complex(k) => RingElement::Complex(pair(
            &k,
            f.iter()
                .map(|v| match v {
                    RingElement::Complex(z) => Ok(*z),
                    _ => Err(wrong()),
                })
                .collect::<Result<_>>()?,
        )),
        Ket::Quaternion(k) => RingElement::Quaternion(pair(
            &k,
            f.iter()
                .map(|v| match v {
                    RingElement::Quaternion(q) => Ok(*q),
                    _ => Err(wrong()),
                })
                .collect::<Result<_>>()?,
        )),
        Ket::Grassmann(k) => RingElement::Grassmann(pair(
            &k,
            f.iter()
                .map(|v| match v {
                    RingElement::Grassmann(g) => Ok(g.clone()),
                    RingElement::Complex(z) => Ok(GrassmannNumber::scalar(*z)),
                    _ => Err(wrong()),
                })
                .collect::<Result<_>>()?,
        )),
    })
}

/// Inverse of a fiber element as a ring element, for equivariance checks.
pub fn fiber_inverse(w: &FiberElement) -> RingElement {
    match w {
        FiberElement::U1(w) => RingElement::Complex(w.conj()),
        FiberElement::Sp1(w) => RingElement::Quaternion(w.conj()),
        FiberElement::SuperU1(w) => RingElement::Grassmann(w.involution()),
    }
}

/// Uniform random total-space point; graded points use `C_L` with the given
/// `L` and `η = Σ αᵢθᵢ`.
pub fn random_total_point<R: Rng + ?Sized>(case: Case, rng: &mut R, alg: &GrassmannAlgebra) -> TotalPoint {
    match case {
        Case::Monopole => {
            let v = charts::uniform_sphere(rng, 4);
            TotalPoint::Monopole { a: Complex64::new(v[0], v[1]), b: Complex64::new(v[2], v[3]) }
        }
        Case::Instanton => {
            let v = charts::uniform_sphere(rng, 8);
            TotalPoint::Instanton {
                a: Quaternion::new(v[0], v[1], v[2], v[3]),
                b: Quaternion::new(v[4], v[5], v[6], v[7]),
            }
        }
        Case::Graded => {
            let v = charts::uniform_sphere(rng, 4);
            TotalPoint::Graded {
                a: GrassmannNumber::scalar(Complex64::new(v[0], v[1])),
                b: GrassmannNumber::scalar(Complex64::new(v[2], v[3])),
                eta: alg.random_odd_linear(rng, 1.0),
            }
        }
    }
}

/// Random unit fiber element for the case.
pub fn random_fiber_element<R: Rng + ?Sized>(case: Case, rng: &mut R, alg: &GrassmannAlgebra) -> FiberElement {
    match case {
        Case::Monopole => FiberElement::U1(Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))),
        Case::Instanton => {
            let v = charts::uniform_sphere(rng, 4);
            FiberElement::Sp1(Quaternion::new(v[0], v[1], v[2], v[3]))
        }
        Case::Graded => {
            let body = rng.random_range(-6.0..6.0);
            let lambda = crate::supermatrix::random_self_conjugate_even(alg, rng, body);
            FiberElement::from(&SuperU1Element::new(lambda).expect("self-conjugate even"))
        }
    }
}

/// Deterministic sample of `n` total-space points (`L = 2` for the graded case).
pub fn sample(case: Case, seed: u64, n: usize) -> Vec<TotalPoint> {
    sample_with(case, seed, n, 2).expect("L = 2 is valid")
}

pub fn sample_with(case: Case, seed: u64, n: usize, l: usize) -> Result<Vec<TotalPoint>> {
    let alg = GrassmannAlgebra::new(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| random_total_point(case, &mut rng, &alg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> GrassmannAlgebra {
        GrassmannAlgebra::new(2).unwrap()
    }

    #[test]
    fn monopole_north_pole() {
        let t = TotalPoint::monopole(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(hopf_project(&t).unwrap(), BasePoint::Monopole([1.0, 0.0, 0.0]));
    }

    #[test]
    fn instanton_equator_point() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let t = TotalPoint::instanton(Quaternion::real(r), Quaternion::real(r)).unwrap();
        let BasePoint::Instanton(x) = hopf_project(&t).unwrap() else { panic!() };
        assert!(x[0].abs() < 1e-15 && (x[4] - 1.0).abs() < 1e-15);
        assert!(x[1] == 0.0 && x[2] == 0.0 && x[3] == 0.0);
    }

    #[test]
    fn graded_without_eta_is_monopole() {
        for t in sample(Case::Monopole, 1, 20) {
            let TotalPoint::Monopole { a, b } = t.clone() else { panic!() };
            let g = TotalPoint::graded(a.into(), b.into(), GrassmannNumber::zero()).unwrap();
            let BasePoint::Graded { x, xi_minus, xi_plus } = hopf_project(&g).unwrap() else { panic!() };
            let m = hopf_project(&t).unwrap().body();
            for k in 0..3 {
                assert!((x[k].clone() - GrassmannNumber::real(m[k])).max_abs() < 1e-15);
            }
            assert!(xi_minus.is_zero() && xi_plus.is_zero());
        }
    }

    #[test]
    fn off_constraint_rejected() {
        assert!(TotalPoint::monopole(Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)).is_err());
        let bad = TotalPoint::Instanton { a: Quaternion::real(2.0), b: Quaternion::real(0.0) };
        assert!(matches!(hopf_project(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn projections_satisfy_base_constraint() {
        for case in Case::ALL {
            for t in sample(case, 2, 200) {
                let x = hopf_project(&t).unwrap();
                assert!(x.constraint_residual() < 1e-12, "{case}");
            }
        }
        for t in sample_with(Case::Graded, 3, 50, 4).unwrap() {
            assert!(hopf_project(&t).unwrap().constraint_residual() < 1e-12);
        }
    }

    #[test]
    fn graded_xi_conjugation() {
        for t in sample(Case::Graded, 4, 50) {
            let BasePoint::Graded { x, xi_minus, xi_plus } = hopf_project(&t).unwrap() else { panic!() };
            assert!((xi_minus.involution() - xi_plus.clone()).max_abs() < 1e-15);
            assert!((xi_plus.involution() + xi_minus.clone()).max_abs() < 1e-15);
            for v in &x {
                assert!((v.involution() - v.clone()).max_abs() < 1e-15);
                assert_eq!(v.parity(), Some(Parity::Even));
            }
        }
    }

    #[test]
    fn invariants_round_trip() {
        for case in Case::ALL {
            for t in sample(case, 5, 500) {
                let x = hopf_project(&t).unwrap();
                let d = invariants_from_base(&x).max_abs_diff(&invariants_direct(&t));
                assert!(d < 1e-12, "{case}: {d}");
            }
        }
    }

    #[test]
    fn poles_invariants() {
        let Invariants::Complex { a_sq, b_sq, .. } = invariants_from_base(&BasePoint::Monopole([1.0, 0.0, 0.0])) else {
            panic!()
        };
        assert_eq!((a_sq, b_sq), (1.0, 0.0));
    }

    #[test]
    fn kets_normalized() {
        for case in Case::ALL {
            for t in sample(case, 6, 200) {
                assert!(standard_ket(&t).normalization_residual() < 1e-12, "{case}");
            }
        }
        let t = TotalPoint::monopole(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        let Ket::Complex(k) = standard_ket(&t) else { panic!() };
        assert_eq!(k.entries(), &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn graded_ket_normalization_exact_in_soul() {
        let a4 = GrassmannAlgebra::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let t = random_total_point(Case::Graded, &mut rng, &a4);
            let Ket::Grassmann(k) = standard_ket(&t) else { panic!() };
            let n = k.super_dagger().matmul(&k).unwrap();
            // every soul coefficient cancels
            assert!(n.get(0, 0).soul().max_abs() < 1e-15);
        }
    }

    #[test]
    fn right_action_preserves_projection_and_multiplies_ket() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for case in Case::ALL {
            for t in sample(case, 9, 100) {
                let w = random_fiber_element(case, &mut rng, &alg());
                let tw = right_action(&t, &w).unwrap();
                let (x, xw) = (hopf_project(&t).unwrap(), hopf_project(&tw).unwrap());
                let d = invariants_from_base(&x).max_abs_diff(&invariants_from_base(&xw));
                assert!(d < 1e-12, "{case}");
                let kw = standard_ket(&t).right_mul(&w).unwrap();
                assert!(standard_ket(&tw).max_abs_diff(&kw) < 1e-12, "{case}");
            }
        }
    }

    #[test]
    fn right_action_identity_and_errors() {
        let t = sample(Case::Monopole, 10, 1).remove(0);
        assert_eq!(right_action(&t, &FiberElement::U1(Complex64::new(1.0, 0.0))).unwrap(), t);
        assert!(right_action(&t, &FiberElement::U1(Complex64::new(2.0, 0.0))).is_err());
        assert!(right_action(&t, &FiberElement::Sp1(Quaternion::real(1.0))).is_err());
    }

    #[test]
    fn instanton_right_action_by_j() {
        let t = sample(Case::Instanton, 11, 1).remove(0);
        let TotalPoint::Instanton { a, b } = t.clone() else { panic!() };
        let tw = right_action(&t, &FiberElement::Sp1(Quaternion::j())).unwrap();
        let TotalPoint::Instanton { a: aw, b: bw } = tw else { panic!() };
        assert_eq!(aw, a * Quaternion::j());
        assert!((aw.norm() - a.norm()).abs() < 1e-15 && (bw.norm() - b.norm()).abs() < 1e-15);
    }

    #[test]
    fn equivariant_maps() {
        let t = sample(Case::Monopole, 12, 1).remove(0);
        let TotalPoint::Monopole { a, .. } = t.clone() else { panic!() };
        let phi = equivariant_from_sections(&[Complex64::new(1.0, 0.0).into(), Complex64::new(0.0, 0.0).into()], &t)
            .unwrap();
        assert_eq!(phi, RingElement::Complex(a.conj()));
        assert!(equivariant_from_sections(&[Complex64::new(1.0, 0.0).into()], &t).is_err());

        let g = sample(Case::Graded, 13, 1).remove(0);
        let TotalPoint::Graded { eta, .. } = g.clone() else { panic!() };
        let one = RingElement::Grassmann(GrassmannNumber::real(1.0));
        let zero = RingElement::Grassmann(GrassmannNumber::zero());
        let phi = equivariant_from_sections(&[one, zero.clone(), zero], &g).unwrap();
        assert_eq!(phi, RingElement::Grassmann(eta.involution().scale(0.5)));
    }

    #[test]
    fn equivariance_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let a2 = alg();
        for case in Case::ALL {
            for _ in 0..200 {
                let t = random_total_point(case, &mut rng, &a2);
                let w = random_fiber_element(case, &mut rng, &a2);
                let f: Vec<RingElement> = match case {
                    Case::Monopole => (0..2).map(|_| crate::algebra::gaussian_complex(&mut rng).into()).collect(),
                    Case::Instanton => (0..2)
                        .map(|_| {
                            let v: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
                            Quaternion::new(v[0], v[1], v[2], v[3]).into()
                        })
                        .collect(),
                    Case::Graded => (0..3)
                        .map(|i| {
                            let p = if i == 0 { Parity::Odd } else { Parity::Even };
                            RingElement::Grassmann(a2.random_homogeneous(&mut rng, p))
                        })
                        .collect(),
                };
                let phi = equivariant_from_sections(&f, &t).unwrap();
                let phi_w = equivariant_from_sections(&f, &right_action(&t, &w).unwrap()).unwrap();
                let expect = fiber_inverse(&w).checked_mul(&phi).unwrap();
                let neg = expect.checked_mul(&ring_minus_one(case)).unwrap();
                let r = phi_w.checked_add(&neg).unwrap().max_abs();
                assert!(r < 1e-12, "{case}: {r}");
            }
        }
    }

    fn ring_minus_one(case: Case) -> RingElement {
        match case {
            Case::Monopole => Complex64::new(-1.0, 0.0).into(),
            Case::Instanton => Quaternion::real(-1.0).into(),
            Case::Graded => RingElement::Grassmann(GrassmannNumber::real(-1.0)),
        }
    }
}
