//! Projectors as matrices of polynomial forms in base coordinates, and
//! their curvature and Chern forms.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::ProjectorCase;
use crate::algebra::{Parity, Quaternion, Scalar};
use crate::bundle::Case;
use crate::error::Result;
use crate::forms::{FormMatrix, GradedForm, TraceMode, Var, XI_MINUS, XI_PLUS};

type C = GradedForm<Complex64>;
type Q = GradedForm<Quaternion>;

/// A symbolic projector or curvature over the case's coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicMatrix {
    Complex(FormMatrix<Complex64>),
    Quaternion(FormMatrix<Quaternion>),
}

impl SymbolicMatrix {
    fn curvature(&self) -> Result<SymbolicMatrix> {
        fn go<R: Scalar>(p: &FormMatrix<R>) -> Result<FormMatrix<R>> {
            let dp = p.d();
            p.wedge(&dp)?.wedge(&dp)
        }
        Ok(match self {
            SymbolicMatrix::Complex(p) => SymbolicMatrix::Complex(go(p)?),
            SymbolicMatrix::Quaternion(p) => SymbolicMatrix::Quaternion(go(p)?),
        })
    }
}

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn x(i: u8) -> C {
    C::x(i)
}

fn lin(c0: f64, terms: &[(Complex64, u8)]) -> C {
    terms.iter().fold(C::real(c0), |acc, &(c, i)| acc + x(i).left_mul(&c))
}

/// Monopole projector `½[[1+x₀, x₁−ix₂],[x₁+ix₂, 1−x₀]]`.
pub fn monopole_projector() -> FormMatrix<Complex64> {
    let e = vec![
        lin(1.0, &[(z(1.0, 0.0), 0)]),
        lin(0.0, &[(z(1.0, 0.0), 1), (z(0.0, -1.0), 2)]),
        lin(0.0, &[(z(1.0, 0.0), 1), (z(0.0, 1.0), 2)]),
        lin(1.0, &[(z(-1.0, 0.0), 0)]),
    ];
    FormMatrix::new(vec![Parity::Even; 2], vec![Parity::Even; 2], e).expect("2x2").scale(0.5)
}

/// Graded monopole projector on `S^{2,2}` in the coordinates `x₀, x₁, x₂, ξ₋, ξ₊`.
pub fn graded_projector() -> FormMatrix<Complex64> {
    let (m, p) = (C::var(XI_MINUS), C::var(XI_PLUS));
    let pm = p.clone() * m.clone();
    let zp = lin(0.0, &[(z(1.0, 0.0), 1), (z(0.0, 1.0), 2)]);
    let zm = lin(0.0, &[(z(1.0, 0.0), 1), (z(0.0, -1.0), 2)]);
    let up = lin(1.0, &[(z(1.0, 0.0), 0)]);
    let dn = lin(1.0, &[(z(-1.0, 0.0), 0)]);
    let e = vec![
        pm.scale(2.0),
        zp.clone() * m.clone() - up.clone() * p.clone(),
        -(zm.clone() * p.clone()) + dn.clone() * m.clone(),
        -(zm.clone() * p.clone()) - up.clone() * m.clone(),
        up + pm.clone(),
        zm,
        -(zp.clone() * m) - dn.clone() * p,
        zp,
        dn + pm,
    ];
    FormMatrix::new(Case::Graded.signature(), Case::Graded.signature(), e).expect("3x3").scale(0.5)
}

/// Instanton projector `½[[1+x₀, x₄+ξ],[x₄−ξ, 1−x₀]]`, `ξ = x₁i + x₂j + x₃k`.
pub fn instanton_projector() -> FormMatrix<Quaternion> {
    let xq = |c: Quaternion, i: u8| Q::x(i).left_mul(&c);
    let xi = xq(Quaternion::i(), 1) + xq(Quaternion::j(), 2) + xq(Quaternion::k(), 3);
    let x4 = Q::x(4);
    let e = vec![
        Q::real(1.0) + Q::x(0),
        x4.clone() + xi.clone(),
        x4 - xi,
        Q::real(1.0) - Q::x(0),
    ];
    FormMatrix::new(vec![Parity::Even; 2], vec![Parity::Even; 2], e).expect("2x2").scale(0.5)
}

/// The projector of the case, (super)transposed if requested.
pub fn projector(pc: ProjectorCase) -> SymbolicMatrix {
    let m = match pc.case {
        Case::Monopole => SymbolicMatrix::Complex(monopole_projector()),
        Case::Graded => SymbolicMatrix::Complex(graded_projector()),
        Case::Instanton => SymbolicMatrix::Quaternion(instanton_projector()),
    };
    if !pc.transposed {
        return m;
    }
    match m {
        SymbolicMatrix::Complex(p) => SymbolicMatrix::Complex(p.super_transpose()),
        SymbolicMatrix::Quaternion(p) => SymbolicMatrix::Quaternion(p.super_transpose()),
    }
}

/// The coordinate exchange that maps `p` to `q` in each case.
pub fn transposition_substitution(case: Case) -> impl Fn(Var) -> Option<C> {
    move |v| match (case, v) {
        (Case::Monopole | Case::Graded, Var::X(2)) => Some(-C::x(2)),
        (Case::Graded, Var::Xi(0)) => Some(-C::var(XI_PLUS)),
        (Case::Graded, Var::Xi(1)) => Some(C::var(XI_MINUS)),
        _ => None,
    }
}

/// `ξ → −ξ` on quaternionic forms.
pub fn instanton_transposition(v: Var) -> Option<Q> {
    match v {
        Var::X(i @ 1..=3) => Some(-Q::x(i)),
        _ => None,
    }
}

/// `p(dp)²`.
pub fn curvature(pc: ProjectorCase) -> Result<SymbolicMatrix> {
    projector(pc).curvature()
}

/// Chern forms with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernForms {
    pub c1: GradedForm<Complex64>,
    /// `−(1/8π²)[tr(p(dp)⁴) − C₁C₁]`, instanton only.
    pub c2: Option<GradedForm<Complex64>>,
    /// `−(1/8π²) tr(p(dp)⁴)` without the subtraction, instanton only.
    pub c2_plain: Option<GradedForm<Complex64>>,
}

fn c1_factor() -> Complex64 {
    // −1/(2πi) = i/(2π)
    z(0.0, 1.0 / (2.0 * PI))
}

pub fn chern_forms(pc: ProjectorCase) -> Result<ChernForms> {
    match projector(pc) {
        SymbolicMatrix::Complex(p) => {
            let mode = if pc.case == Case::Graded { TraceMode::Super } else { TraceMode::Plain };
            let dp = p.d();
            let f = p.wedge(&dp)?.wedge(&dp)?;
            Ok(ChernForms { c1: f.trace_form(mode)?.left_mul(&c1_factor()), c2: None, c2_plain: None })
        }
        SymbolicMatrix::Quaternion(p) => {
            let to_c = |f: GradedForm<Quaternion>| f.map_coeffs(|q| Complex64::new(q.r0, 0.0));
            let dp = p.d();
            let dp2 = dp.wedge(&dp)?;
            let f = p.wedge(&dp2)?;
            let c1 = to_c(f.trace_form(TraceMode::Quaternionic)?).left_mul(&c1_factor());
            let f2 = f.wedge(&dp2)?;
            let t4 = to_c(f2.trace_form(TraceMode::Quaternionic)?);
            let k = -1.0 / (8.0 * PI * PI);
            let c2 = (t4.clone() - c1.wedge(&c1)).scale(k);
            Ok(ChernForms { c1, c2: Some(c2), c2_plain: Some(t4.scale(k)) })
        }
    }
}

/// The top-degree Chern form whose integral is the case's charge, reduced
/// to the body for the graded case.
pub fn charge_form(pc: ProjectorCase) -> Result<GradedForm<Complex64>> {
    let forms = chern_forms(pc)?;
    Ok(match pc.case {
        Case::Monopole => forms.c1,
        Case::Graded => forms.c1.body_project(),
        Case::Instanton => forms.c2.expect("instanton has C₂"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GrassmannNumber;
    use crate::bundle::{hopf_project, sample, standard_ket, BasePoint, Ket};
    use crate::forms::volume_form;

    fn pc(case: Case, transposed: bool) -> ProjectorCase {
        ProjectorCase { case, transposed }
    }

    fn graded_eval(m: &FormMatrix<Complex64>, x: &BasePoint) -> crate::supermatrix::GradedMatrix<GrassmannNumber> {
        let BasePoint::Graded { x, xi_minus, xi_plus } = x else { panic!() };
        m.evaluate(|c| GrassmannNumber::scalar(*c), |v| match v {
            Var::X(i) => x[i as usize].clone(),
            Var::Xi(0) => xi_minus.clone(),
            Var::Xi(1) => xi_plus.clone(),
            _ => unreachable!(),
        })
        .unwrap()
    }

    #[test]
    fn monopole_north_pole() {
        let p = monopole_projector()
            .evaluate(|c| *c, |v| if v == Var::X(0) { z(1.0, 0.0) } else { z(0.0, 0.0) })
            .unwrap();
        assert_eq!(p.entries(), &[z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(0.0, 0.0)]);
    }

    #[test]
    fn instanton_off_diagonal_entry() {
        let p = instanton_projector();
        let expect = (Q::x(4) + Q::x(1).left_mul(&Quaternion::i()) + Q::x(2).left_mul(&Quaternion::j()) + Q::x(3).left_mul(&Quaternion::k())).scale(0.5);
        assert_eq!(p.get(0, 1), &expect);
    }

    #[test]
    fn symbolic_matches_ket_bra() {
        for t in sample(Case::Graded, 1, 200) {
            let x = hopf_project(&t).unwrap();
            let Ket::Grassmann(k) = standard_ket(&t) else { panic!() };
            let pk = k.matmul(&k.super_dagger()).unwrap();
            assert!(graded_eval(&graded_projector(), &x).max_abs_diff(&pk) < 1e-13);
        }
        for t in sample(Case::Monopole, 2, 200) {
            let BasePoint::Monopole(xs) = hopf_project(&t).unwrap() else { panic!() };
            let Ket::Complex(k) = standard_ket(&t) else { panic!() };
            let pk = k.matmul(&k.super_dagger()).unwrap();
            let ps = monopole_projector().evaluate(|c| *c, |v| if let Var::X(i) = v { z(xs[i as usize], 0.0) } else { unreachable!() }).unwrap();
            assert!(ps.max_abs_diff(&pk) < 1e-13);
        }
        for t in sample(Case::Instanton, 3, 200) {
            let BasePoint::Instanton(xs) = hopf_project(&t).unwrap() else { panic!() };
            let Ket::Quaternion(k) = standard_ket(&t) else { panic!() };
            let pk = k.matmul(&k.super_dagger()).unwrap();
            let ps = instanton_projector().evaluate(|c| *c, |v| if let Var::X(i) = v { Quaternion::real(xs[i as usize]) } else { unreachable!() }).unwrap();
            assert!(ps.max_abs_diff(&pk) < 1e-13);
        }
    }

    #[test]
    fn graded_q_matches_explicit_matrix() {
        let (m, p) = (C::var(XI_MINUS), C::var(XI_PLUS));
        let zp = lin(0.0, &[(z(1.0, 0.0), 1), (z(0.0, 1.0), 2)]);
        let zm = lin(0.0, &[(z(1.0, 0.0), 1), (z(0.0, -1.0), 2)]);
        let up = lin(1.0, &[(z(1.0, 0.0), 0)]);
        let dn = lin(1.0, &[(z(-1.0, 0.0), 0)]);
        let pm = p.clone() * m.clone();
        let explicit = FormMatrix::new(
            Case::Graded.signature(),
            Case::Graded.signature(),
            vec![
                pm.scale(2.0),
                -(zm.clone() * p.clone()) - up.clone() * m.clone(),
                -(zp.clone() * m.clone()) - dn.clone() * p.clone(),
                -(zp.clone() * m.clone()) + up.clone() * p.clone(),
                up + pm.clone(),
                zp,
                zm * p - dn.clone() * m,
                lin(0.0, &[(z(1.0, 0.0), 1), (z(0.0, -1.0), 2)]),
                dn + pm,
            ],
        )
        .unwrap()
        .scale(0.5);
        let SymbolicMatrix::Complex(q) = projector(pc(Case::Graded, true)) else { panic!() };
        assert_eq!(q, explicit);
    }

    #[test]
    fn transposition_is_a_coordinate_exchange() {
        for case in [Case::Monopole, Case::Graded] {
            let SymbolicMatrix::Complex(p) = projector(pc(case, false)) else { panic!() };
            let SymbolicMatrix::Complex(q) = projector(pc(case, true)) else { panic!() };
            let sub = transposition_substitution(case);
            assert_eq!(p.substitute(&sub), q, "{case}");
        }
        let SymbolicMatrix::Quaternion(p) = projector(pc(Case::Instanton, false)) else { panic!() };
        let SymbolicMatrix::Quaternion(q) = projector(pc(Case::Instanton, true)) else { panic!() };
        assert_eq!(p.substitute(&instanton_transposition), q);
    }

    #[test]
    fn curvature_is_a_two_form() {
        for case in Case::ALL {
            let f = curvature(pc(case, false)).unwrap();
            let degrees: Vec<Option<u32>> = match &f {
                SymbolicMatrix::Complex(m) => m.entries().iter().map(GradedForm::degree).collect(),
                SymbolicMatrix::Quaternion(m) => m.entries().iter().map(GradedForm::degree).collect(),
            };
            assert!(degrees.iter().all(|d| *d == Some(2)), "{case}");
        }
    }

    #[test]
    fn monopole_c1_is_volume_form() {
        let vol = volume_form(3).scale(-1.0 / (4.0 * PI));
        let c1 = chern_forms(pc(Case::Monopole, false)).unwrap().c1;
        assert!(c1.max_abs_diff(&vol) < 1e-15, "{c1:?}");
        let c1q = chern_forms(pc(Case::Monopole, true)).unwrap().c1;
        assert!(c1q.max_abs_diff(&vol.scale(-1.0)) < 1e-15);
    }

    #[test]
    fn graded_body_is_volume_form() {
        let vol = volume_form(3).scale(-1.0 / (4.0 * PI));
        let b = charge_form(pc(Case::Graded, false)).unwrap();
        assert!(b.max_abs_diff(&vol) < 1e-15, "{b:?}");
        let bq = charge_form(pc(Case::Graded, true)).unwrap();
        assert!(bq.max_abs_diff(&vol.scale(-1.0)) < 1e-15);
    }

    #[test]
    fn graded_c1_transposes_to_minus() {
        let c1 = chern_forms(pc(Case::Graded, false)).unwrap().c1;
        let c1q = chern_forms(pc(Case::Graded, true)).unwrap().c1;
        let sub = transposition_substitution(Case::Graded);
        assert!(c1.substitute(&sub).max_abs_diff(&c1q) < 1e-15);
    }

    #[test]
    fn instanton_chern_forms() {
        let f = chern_forms(pc(Case::Instanton, false)).unwrap();
        assert!(f.c1.is_empty(), "{:?}", f.c1);
        let vol = volume_form(5).scale(-3.0 / (8.0 * PI * PI));
        let c2 = f.c2.unwrap();
        assert!(c2.max_abs_diff(&vol) < 1e-15, "{c2:?}");
        assert!(f.c2_plain.unwrap().max_abs_diff(&c2) < 1e-15);
        let fq = chern_forms(pc(Case::Instanton, true)).unwrap();
        assert!(fq.c2.unwrap().max_abs_diff(&vol.scale(-1.0)) < 1e-15);
    }
}
