//! The supergroup `UOSP(1,2)` in its defining 3×3 representation.
//!
//! Index 0 is odd, indices 1 and 2 are even. Elements are parametrized by
//! two even Grassmann numbers `a, b` with `a a∘ + b b∘ = 1` and one odd `η`.

use num_complex::Complex64;
use rand::Rng;

use super::GradedMatrix;
use crate::algebra::{GrassmannAlgebra, GrassmannNumber, Parity, Scalar};
use crate::error::{domain, Result};

pub const SIGNATURE_1_2: [Parity; 3] = [Parity::Odd, Parity::Even, Parity::Even];

const NORMALIZATION_TOL: f64 = 1e-12;

fn sig() -> Vec<Parity> {
    SIGNATURE_1_2.to_vec()
}

fn g(re: f64, im: f64) -> GrassmannNumber {
    GrassmannNumber::scalar(Complex64::new(re, im))
}

/// Even generators `A₀, A₁, A₂` and odd generators `R₊, R₋` of `osp(1,2)`.
#[derive(Debug, Clone)]
pub struct Osp12Generators<R: Scalar> {
    pub a0: GradedMatrix<R>,
    pub a1: GradedMatrix<R>,
    pub a2: GradedMatrix<R>,
    pub r_plus: GradedMatrix<R>,
    pub r_minus: GradedMatrix<R>,
}

pub fn osp12_generators<R: Scalar>() -> Osp12Generators<R> {
    let z = |re: f64, im: f64| R::from_complex(Complex64::new(re, im));
    let m = |entries: [(f64, f64); 9]| {
        GradedMatrix::new(sig(), sig(), entries.iter().map(|&(re, im)| z(re, im)).collect())
            .expect("3x3")
    };
    let o = (0.0, 0.0);
    Osp12Generators {
        a0: m([o, o, o, o, (0.0, 0.5), o, o, o, (0.0, -0.5)]),
        a1: m([o, o, o, o, o, (0.0, 0.5), o, (0.0, 0.5), o]),
        // (i/2)·[[0,0,0],[0,0,−i],[0,i,0]]
        a2: m([o, o, o, o, o, (0.5, 0.0), o, (-0.5, 0.0), o]),
        r_plus: m([o, (-0.5, 0.0), o, o, o, o, (-0.5, 0.0), o, o]),
        r_minus: m([o, o, (0.5, 0.0), (-0.5, 0.0), o, o, o, o, o]),
    }
}

/// Closed-form 3×3 matrix `s(a, b, η)`.
///
/// With `a a∘ + b b∘ = 1` this is an element of `UOSP(1,2)`; otherwise it is
/// still an invertible supermatrix whenever the body of `(a, b)` is nonzero.
pub fn uosp_closed_form(
    a: &GrassmannNumber,
    b: &GrassmannNumber,
    eta: &GrassmannNumber,
) -> GradedMatrix<GrassmannNumber> {
    let ad = a.involution();
    let bd = b.involution();
    let ed = eta.involution();
    let n = eta.clone() * ed.clone();
    let f = g(1.0, 0.0) - n.scale(0.125);
    let entries = vec![
        g(1.0, 0.0) + n.scale(0.25),
        eta.scale(-0.5),
        ed.scale(0.5),
        (a.clone() * ed.clone() - bd.clone() * eta.clone()).scale(-0.5),
        a.clone() * f.clone(),
        -(bd.clone() * f.clone()),
        (b.clone() * ed.clone() + ad.clone() * eta.clone()).scale(-0.5),
        b.clone() * f.clone(),
        ad * f,
    ];
    GradedMatrix::new(sig(), sig(), entries).expect("3x3")
}

/// The adjoint `s†` written out in terms of `(a, b, η)`.
pub fn uosp_adjoint_closed_form(
    a: &GrassmannNumber,
    b: &GrassmannNumber,
    eta: &GrassmannNumber,
) -> GradedMatrix<GrassmannNumber> {
    let ad = a.involution();
    let bd = b.involution();
    let ed = eta.involution();
    let n = eta.clone() * ed.clone();
    let f = g(1.0, 0.0) - n.scale(0.125);
    let entries = vec![
        g(1.0, 0.0) + n.scale(0.25),
        (ad.clone() * eta.clone() + b.clone() * ed.clone()).scale(0.5),
        (bd.clone() * eta.clone() - a.clone() * ed.clone()).scale(0.5),
        ed.scale(0.5),
        ad * f.clone(),
        bd * f.clone(),
        eta.scale(0.5),
        -(b.clone() * f.clone()),
        a.clone() * f,
    ];
    GradedMatrix::new(sig(), sig(), entries).expect("3x3")
}

/// An element of `UOSP(1,2)` with its cached matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UospElement {
    a: GrassmannNumber,
    b: GrassmannNumber,
    eta: GrassmannNumber,
    matrix: GradedMatrix<GrassmannNumber>,
}

/// Builds `s(a, b, η)`, checking parities and `a a∘ + b b∘ = 1`.
pub fn uosp_element(
    a: GrassmannNumber,
    b: GrassmannNumber,
    eta: GrassmannNumber,
) -> Result<UospElement> {
    let has = |x: &GrassmannNumber, p: Parity| x.is_zero() || x.parity() == Some(p);
    if !has(&a, Parity::Even) || !has(&b, Parity::Even) {
        return domain("UOSP(1,2) parameters a, b must be even");
    }
    if !has(&eta, Parity::Odd) {
        return domain("UOSP(1,2) parameter η must be odd");
    }
    let norm = a.clone() * a.involution() + b.clone() * b.involution();
    let residual = (norm - GrassmannNumber::real(1.0)).max_abs();
    if residual > NORMALIZATION_TOL {
        return domain(format!("a a∘ + b b∘ ≠ 1 (residual {residual:.3e})"));
    }
    let matrix = uosp_closed_form(&a, &b, &eta);
    Ok(UospElement { a, b, eta, matrix })
}

impl UospElement {
    pub fn identity() -> Self {
        uosp_element(GrassmannNumber::real(1.0), GrassmannNumber::zero(), GrassmannNumber::zero())
            .expect("identity parameters")
    }

    pub fn a(&self) -> &GrassmannNumber {
        &self.a
    }

    pub fn b(&self) -> &GrassmannNumber {
        &self.b
    }

    pub fn eta(&self) -> &GrassmannNumber {
        &self.eta
    }

    pub fn matrix(&self) -> &GradedMatrix<GrassmannNumber> {
        &self.matrix
    }

    pub fn dagger(&self) -> GradedMatrix<GrassmannNumber> {
        self.matrix.super_dagger()
    }

    pub fn sdet(&self) -> Result<GrassmannNumber> {
        self.matrix.super_determinant()
    }

    /// Largest entrywise deviation of `s†s` and `s s†` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let id = GradedMatrix::identity(sig());
        let d = self.dagger();
        (&d * &self.matrix).max_abs_diff(&id).max((&self.matrix * &d).max_abs_diff(&id))
    }
}

/// Element `w = exp(iλ/2)` of the Grassmann extension of `U(1)`, `λ∘ = λ` even.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperU1Element {
    lambda: GrassmannNumber,
}

impl SuperU1Element {
    pub fn new(lambda: GrassmannNumber) -> Result<Self> {
        if !lambda.is_zero() && lambda.parity() != Some(Parity::Even) {
            return domain("𝒰(1) parameter λ must be even");
        }
        if (lambda.involution() - lambda.clone()).max_abs() > NORMALIZATION_TOL {
            return domain("𝒰(1) parameter λ must satisfy λ∘ = λ");
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> &GrassmannNumber {
        &self.lambda
    }

    pub fn value(&self) -> GrassmannNumber {
        self.lambda.scale_complex(Complex64::new(0.0, 0.5)).exp()
    }

    /// `diag(1, w, w∘)`, which equals `exp(λ A₀)`.
    pub fn matrix(&self) -> GradedMatrix<GrassmannNumber> {
        let w = self.value();
        let z = GrassmannNumber::zero;
        GradedMatrix::new(
            sig(),
            sig(),
            vec![g(1.0, 0.0), z(), z(), z(), w.clone(), z(), z(), z(), w.involution()],
        )
        .expect("3x3")
    }
}

/// Right action `s(a, b, η)·w = s(aw, bw, ηw)`.
pub fn super_u1_act(s: &UospElement, w: &SuperU1Element) -> Result<UospElement> {
    let w = w.value();
    uosp_element(s.a.clone() * w.clone(), s.b.clone() * w.clone(), s.eta.clone() * w)
}

/// `exp(a₀A₀) exp(a₁A₁) exp(a₂A₂) exp(η R₊ + η∘ R₋)`.
pub fn one_parameter_product(
    a0: &GrassmannNumber,
    a1: &GrassmannNumber,
    a2: &GrassmannNumber,
    eta: &GrassmannNumber,
) -> Result<(GradedMatrix<GrassmannNumber>, GradedMatrix<GrassmannNumber>)> {
    let gens = osp12_generators::<GrassmannNumber>();
    let u = gens
        .a0
        .left_scale(a0)
        .exp()?
        .matmul(&gens.a1.left_scale(a1).exp()?)?
        .matmul(&gens.a2.left_scale(a2).exp()?)?;
    let x = gens.r_plus.left_scale(eta).try_add(&gens.r_minus.left_scale(&eta.involution()))?;
    Ok((u, x.exp()?))
}

/// Random even element with `x∘ = x`: a real body plus a symmetrized soul.
pub fn random_self_conjugate_even<R: Rng + ?Sized>(alg: &GrassmannAlgebra, rng: &mut R, body: f64) -> GrassmannNumber {
    let s = alg.random_homogeneous(rng, Parity::Even).soul().scale(0.3);
    GrassmannNumber::real(body) + (s.clone() + s.involution()).scale(0.5)
}

fn random_angle<R: Rng + ?Sized>(alg: &GrassmannAlgebra, rng: &mut R) -> GrassmannNumber {
    let body = rng.random_range(-3.0..3.0);
    random_self_conjugate_even(alg, rng, body)
}

/// Random group element built from the one-parameter product.
pub fn random_uosp<R: Rng + ?Sized>(alg: &GrassmannAlgebra, rng: &mut R) -> Result<UospElement> {
    let a0 = random_angle(alg, rng);
    let a1 = random_angle(alg, rng);
    let a2 = random_angle(alg, rng);
    let eta = alg.random_homogeneous(rng, Parity::Odd);
    let (u, _) = one_parameter_product(&a0, &a1, &a2, &eta)?;
    uosp_element(u.get(1, 1).even_part(), u.get(2, 1).even_part(), eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn th(i: usize) -> GrassmannNumber {
        GrassmannNumber::generator(i).unwrap()
    }

    #[test]
    fn generator_entries() {
        let gens = osp12_generators::<Complex64>();
        assert_eq!(*gens.a0.get(1, 1), Complex64::new(0.0, 0.5));
        assert_eq!(*gens.r_plus.get(0, 1), Complex64::new(-0.5, 0.0));
        for m in [&gens.a0, &gens.a1, &gens.a2] {
            for k in 1..3 {
                assert_eq!(*m.get(0, k), Complex64::new(0.0, 0.0));
                assert_eq!(*m.get(k, 0), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn identity_element() {
        let s = UospElement::identity();
        assert!(s.matrix().max_abs_diff(&GradedMatrix::identity(sig())) == 0.0);
        assert_eq!(s.sdet().unwrap(), GrassmannNumber::real(1.0));
    }

    #[test]
    fn entry_zero_one_is_minus_half_eta() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let eta = th(1) - th(2);
        let s = uosp_element(GrassmannNumber::real(r), GrassmannNumber::real(r), eta.clone()).unwrap();
        assert_eq!(*s.matrix().get(0, 1), eta.scale(-0.5));
    }

    #[test]
    fn rejects_bad_parameters() {
        let two = GrassmannNumber::real(2.0);
        assert!(uosp_element(two, GrassmannNumber::zero(), th(1)).is_err());
        assert!(uosp_element(GrassmannNumber::real(1.0), GrassmannNumber::zero(), th(1) * th(2)).is_err());
        assert!(uosp_element(th(1), GrassmannNumber::zero(), th(2)).is_err());
    }

    #[test]
    fn random_elements_unitary_with_unit_sdet() {
        for l in [2, 4] {
            let alg = GrassmannAlgebra::new(l).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..25 {
                let s = random_uosp(&alg, &mut rng).unwrap();
                assert!(s.unitarity_residual() < 1e-12, "L={l}: {}", s.unitarity_residual());
                let sdet = s.sdet().unwrap();
                assert!((sdet - GrassmannNumber::real(1.0)).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dagger_matches_adjoint_closed_form() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let s = random_uosp(&alg, &mut rng).unwrap();
            let closed = uosp_adjoint_closed_form(s.a(), s.b(), s.eta());
            assert!(s.dagger().max_abs_diff(&closed) < 1e-13);
        }
    }

    #[test]
    fn odd_exponential_top_left_entry() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let eta = alg.random_odd_linear(&mut rng, 1.0);
        let z = GrassmannNumber::zero();
        let (_, xi) = one_parameter_product(&z, &z, &z, &eta).unwrap();
        let expect = GrassmannNumber::real(1.0) + (eta.clone() * eta.involution()).scale(0.25);
        assert!((xi.get(0, 0).clone() - expect).max_abs() < 1e-15);
    }

    #[test]
    fn one_parameter_product_matches_closed_form() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let a0 = random_angle(&alg, &mut rng);
            let a1 = random_angle(&alg, &mut rng);
            let a2 = random_angle(&alg, &mut rng);
            let eta = alg.random_homogeneous(&mut rng, Parity::Odd);
            let (u, xi) = one_parameter_product(&a0, &a1, &a2, &eta).unwrap();
            let s = &u * &xi;
            let closed = uosp_closed_form(u.get(1, 1), u.get(2, 1), &eta);
            assert!(s.max_abs_diff(&closed) < 1e-10, "{}", s.max_abs_diff(&closed));
        }
    }

    #[test]
    fn u1_action_is_right_multiplication() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let s = random_uosp(&alg, &mut rng).unwrap();
            let lambda = random_angle(&alg, &mut rng);
            let w = SuperU1Element::new(lambda.clone()).unwrap();
            let ww = w.value() * w.value().involution();
            assert!((ww - GrassmannNumber::real(1.0)).max_abs() < 1e-13);
            let acted = super_u1_act(&s, &w).unwrap();
            let product = s.matrix() * &w.matrix();
            assert!(acted.matrix().max_abs_diff(&product) < 1e-12);
            assert!((acted.sdet().unwrap() - GrassmannNumber::real(1.0)).max_abs() < 1e-12);
            // diag(1, w, w∘) = exp(λ A₀)
            let gens = osp12_generators::<GrassmannNumber>();
            assert!(gens.a0.left_scale(&lambda).exp().unwrap().max_abs_diff(&w.matrix()) < 1e-12);
        }
    }

    #[test]
    fn u1_body_case() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = uosp_element(GrassmannNumber::real(r), GrassmannNumber::real(r), GrassmannNumber::zero()).unwrap();
        let w = SuperU1Element::new(GrassmannNumber::real(0.7)).unwrap();
        let acted = super_u1_act(&s, &w).unwrap();
        let phase = Complex64::new(0.0, 0.35).exp() * r;
        assert!((acted.a().body() - phase).norm() < 1e-15);
        let s1 = super_u1_act(&s, &SuperU1Element::new(GrassmannNumber::zero()).unwrap()).unwrap();
        assert_eq!(s1.matrix(), s.matrix());
    }
}
