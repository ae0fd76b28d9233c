//! Local sections `x ↦ |ψ(x)⟩` of the base with their partial derivatives.
//!
//! Two sections cover each base: one with `a` real and positive (valid away
//! from `x₀ = −1`) and one with `b` real and positive (valid away from
//! `x₀ = 1`); the choice is made per point. They differ by a fiber element,
//! which the projector does not see.

use num_complex::Complex64;

use super::{Case, Ket};
use crate::algebra::{GrassmannNumber, Quaternion, RingElement, Scalar};
use crate::supermatrix::GradedMatrix;

/// A ket together with its derivatives along some set of directions.
#[derive(Debug, Clone, PartialEq)]
pub struct KetJet<R: Scalar> {
    pub value: GradedMatrix<R>,
    pub partials: Vec<GradedMatrix<R>>,
}

impl<R: Scalar> KetJet<R> {
    /// Chain rule: `∂ψ/∂uⱼ = Σ_μ ∂ψ/∂x_μ · J[μ][j]`.
    pub fn along(&self, jac: &[Vec<f64>]) -> KetJet<R> {
        let dim = jac.first().map_or(0, Vec::len);
        let partials = (0..dim)
            .map(|j| {
                let mut acc = GradedMatrix::zeros(self.value.row_parities().to_vec(), vec![crate::algebra::Parity::Even]);
                for (d, row) in self.partials.iter().zip(jac).filter(|(_, row)| row[j] != 0.0) {
                    acc.add_scaled(d, row[j]).expect("same shape");
                }
                acc
            })
            .collect();
        KetJet { value: self.value.clone(), partials }
    }
}

/// Rings that carry one of the three cases.
pub trait CaseRing: Scalar {
    const CASE: Case;
    /// Local section over the base point with body coordinates `x`.
    fn local_section(x: &[f64]) -> KetJet<Self>;
    fn wrap(ket: GradedMatrix<Self>) -> Ket;
    fn unwrap(ket: &Ket) -> Option<&GradedMatrix<Self>>;
    fn element(x: Self) -> RingElement;
}

fn column<R: Scalar>(case: Case, v: Vec<R>) -> GradedMatrix<R> {
    GradedMatrix::column(case.signature(), v).expect("column")
}

fn complex_pair(x: &[f64]) -> ([Complex64; 2], Vec<[Complex64; 2]>) {
    let i = Complex64::new(0.0, 1.0);
    let c = |r: f64| Complex64::new(r, 0.0);
    let z = c(x[1]) + i * x[2];
    if x[0] >= 0.0 {
        let a = (0.5 * (1.0 + x[0])).sqrt();
        let b = z / (2.0 * a);
        let da0 = 1.0 / (4.0 * a);
        (
            [c(a), b],
            vec![[c(da0), -b * (da0 / a)], [c(0.0), c(0.5 / a)], [c(0.0), i * (0.5 / a)]],
        )
    } else {
        let b = (0.5 * (1.0 - x[0])).sqrt();
        let a = z.conj() / (2.0 * b);
        let db0 = -1.0 / (4.0 * b);
        (
            [a, c(b)],
            vec![[-a * (db0 / b), c(db0)], [c(0.5 / b), c(0.0)], [-i * (0.5 / b), c(0.0)]],
        )
    }
}

impl CaseRing for Complex64 {
    const CASE: Case = Case::Monopole;

    fn local_section(x: &[f64]) -> KetJet<Self> {
        let (v, d) = complex_pair(x);
        KetJet {
            value: column(Self::CASE, v.to_vec()),
            partials: d.into_iter().map(|p| column(Self::CASE, p.to_vec())).collect(),
        }
    }

    fn wrap(ket: GradedMatrix<Self>) -> Ket {
        Ket::Complex(ket)
    }

    fn unwrap(ket: &Ket) -> Option<&GradedMatrix<Self>> {
        match ket {
            Ket::Complex(k) => Some(k),
            _ => None,
        }
    }

    fn element(x: Self) -> RingElement {
        RingElement::Complex(x)
    }
}

impl CaseRing for GrassmannNumber {
    const CASE: Case = Case::Graded;

    /// The body section `(0, a, b)`, i.e. the ket at `η = 0`.
    fn local_section(x: &[f64]) -> KetJet<Self> {
        let (v, d) = complex_pair(x);
        let lift = |p: [Complex64; 2]| {
            column(Self::CASE, vec![GrassmannNumber::zero(), p[0].into(), p[1].into()])
        };
        KetJet { value: lift(v), partials: d.into_iter().map(lift).collect() }
    }

    fn wrap(ket: GradedMatrix<Self>) -> Ket {
        Ket::Grassmann(ket)
    }

    fn unwrap(ket: &Ket) -> Option<&GradedMatrix<Self>> {
        match ket {
            Ket::Grassmann(k) => Some(k),
            _ => None,
        }
    }

    fn element(x: Self) -> RingElement {
        RingElement::Grassmann(x)
    }
}

impl CaseRing for Quaternion {
    const CASE: Case = Case::Instanton;

    fn local_section(x: &[f64]) -> KetJet<Self> {
        let q = Quaternion::real;
        let units = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
        let xi = Quaternion::new(0.0, x[1], x[2], x[3]);
        let (v, d) = if x[0] >= 0.0 {
            let a = (0.5 * (1.0 + x[0])).sqrt();
            let b = (q(x[4]) - xi) * (0.5 / a);
            let da0 = 1.0 / (4.0 * a);
            let mut d = vec![[q(da0), b * (-da0 / a)]];
            d.extend(units.iter().map(|u| [q(0.0), *u * (-0.5 / a)]));
            d.push([q(0.0), q(0.5 / a)]);
            ([q(a), b], d)
        } else {
            let b = (0.5 * (1.0 - x[0])).sqrt();
            let a = (q(x[4]) + xi) * (0.5 / b);
            let db0 = -1.0 / (4.0 * b);
            let mut d = vec![[a * (-db0 / b), q(db0)]];
            d.extend(units.iter().map(|u| [*u * (0.5 / b), q(0.0)]));
            d.push([q(0.5 / b), q(0.0)]);
            ([a, q(b)], d)
        };
        KetJet {
            value: column(Self::CASE, v.to_vec()),
            partials: d.into_iter().map(|p| column(Self::CASE, p.to_vec())).collect(),
        }
    }

    fn wrap(ket: GradedMatrix<Self>) -> Ket {
        Ket::Quaternion(ket)
    }

    fn unwrap(ket: &Ket) -> Option<&GradedMatrix<Self>> {
        match ket {
            Ket::Quaternion(k) => Some(k),
            _ => None,
        }
    }

    fn element(x: Self) -> RingElement {
        RingElement::Quaternion(x)
    }
}

/// The local ket at a base point, wrapped by case.
pub fn local_ket(case: Case, x: &[f64]) -> Ket {
    match case {
        Case::Monopole => Complex64::wrap(Complex64::local_section(x).value),
        Case::Graded => GrassmannNumber::wrap(GrassmannNumber::local_section(x).value),
        Case::Instanton => Quaternion::wrap(Quaternion::local_section(x).value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::charts::{base_charts, Chart};
    use crate::bundle::{hopf_project, BasePoint, TotalPoint};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_section<R: CaseRing>() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let chart = Chart::by_name(base_charts(R::CASE)[0]).unwrap();
        let h = 1e-6;
        for _ in 0..100 {
            let u = chart.random_parameters(&mut rng);
            let x = chart.point(&u);
            let jet = R::local_section(&x).along(&chart.jacobian(&u));
            assert!(R::wrap(jet.value.clone()).normalization_residual() < 1e-12);
            // the section projects back to x
            let t = match R::wrap(jet.value.clone()) {
                Ket::Complex(k) => TotalPoint::monopole(*k.get(0, 0), *k.get(1, 0)).unwrap(),
                Ket::Quaternion(k) => TotalPoint::instanton(*k.get(0, 0), *k.get(1, 0)).unwrap(),
                Ket::Grassmann(k) => {
                    TotalPoint::graded(k.get(1, 0).clone(), k.get(2, 0).clone(), GrassmannNumber::zero()).unwrap()
                }
            };
            let body = hopf_project(&t).unwrap().body();
            for (p, q) in body.iter().zip(&x) {
                assert!((p - q).abs() < 1e-12);
            }
            // derivatives against central differences, staying inside one hemisphere
            if x[0].abs() < 1e-3 {
                continue;
            }
            for j in 0..chart.dim() {
                let mut up = u.clone();
                let mut um = u.clone();
                up[j] += h;
                um[j] -= h;
                let vp = R::local_section(&chart.point(&up)).value;
                let vm = R::local_section(&chart.point(&um)).value;
                let fd = vp.try_sub(&vm).unwrap().scale(0.5 / h);
                assert!(fd.max_abs_diff(&jet.partials[j]) < 1e-6);
            }
        }
    }

    #[test]
    fn monopole_section() {
        check_section::<Complex64>();
    }

    #[test]
    fn graded_section() {
        check_section::<GrassmannNumber>();
    }

    #[test]
    fn instanton_section() {
        check_section::<Quaternion>();
    }

    #[test]
    fn local_ket_at_pole() {
        let Ket::Complex(k) = local_ket(Case::Monopole, &[1.0, 0.0, 0.0]) else { panic!() };
        assert_eq!(*k.get(0, 0), Complex64::new(1.0, 0.0));
        let _ = BasePoint::Monopole([1.0, 0.0, 0.0]);
    }
}
