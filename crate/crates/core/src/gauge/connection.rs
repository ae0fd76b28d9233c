//! The canonical connection 1-form `A = ⟨ψ|dψ⟩` on the total space,
//! evaluated on tangent vectors.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{GrassmannAlgebra, GrassmannNumber, Quaternion, RingElement, Scalar};
use crate::bundle::charts::{chart_for, total_chart};
use crate::bundle::{standard_ket, Case, Ket, TotalPoint};
use crate::error::{domain, Result};
use crate::supermatrix::GradedMatrix;

/// A tangent vector to the total space, in the coordinates of [`TotalPoint`].
#[derive(Debug, Clone, PartialEq)]
pub enum Tangent {
    Monopole { da: Complex64, db: Complex64 },
    Graded { da: GrassmannNumber, db: GrassmannNumber, deta: GrassmannNumber },
    Instanton { da: Quaternion, db: Quaternion },
}

/// Tangency tolerance, relative to the size of the vector.
pub const TANGENT_TOL: f64 = 1e-9;

/// Size of the derivative of the defining constraint along `v`.
pub fn tangency_residual(t: &TotalPoint, v: &Tangent) -> Result<f64> {
    Ok(match (t, v) {
        (TotalPoint::Monopole { a, b }, Tangent::Monopole { da, db }) => {
            (a.conj() * da + b.conj() * db).re.abs() / da.norm().hypot(db.norm()).max(1.0)
        }
        (TotalPoint::Instanton { a, b }, Tangent::Instanton { da, db }) => {
            (a.conj() * *da + b.conj() * *db).r0.abs() / da.norm().hypot(db.norm()).max(1.0)
        }
        (TotalPoint::Graded { a, b, .. }, Tangent::Graded { da, db, .. }) => {
            let r = da.clone() * a.involution()
                + a.clone() * da.involution()
                + db.clone() * b.involution()
                + b.clone() * db.involution();
            r.max_abs() / da.max_abs().max(db.max_abs()).max(1.0)
        }
        _ => return domain(format!("tangent does not belong to the {} total space", t.case())),
    })
}

/// `dψ` along `v`.
pub fn ket_differential(t: &TotalPoint, v: &Tangent) -> Result<Ket> {
    let r = tangency_residual(t, v)?;
    if !(r <= TANGENT_TOL) {
        return domain(format!("vector is not tangent to the {} total space (residual {r:.3e})", t.case()));
    }
    let sig = t.case().signature();
    Ok(match (t, v) {
        (TotalPoint::Monopole { .. }, Tangent::Monopole { da, db }) => {
            Ket::Complex(GradedMatrix::column(sig, vec![*da, *db])?)
        }
        (TotalPoint::Instanton { .. }, Tangent::Instanton { da, db }) => {
            Ket::Quaternion(GradedMatrix::column(sig, vec![*da, *db])?)
        }
        (TotalPoint::Graded { a, b, eta }, Tangent::Graded { da, db, deta }) => {
            let f = GrassmannNumber::real(1.0) - (eta.clone() * eta.involution()).scale(0.125);
            let df = (deta.clone() * eta.involution() + eta.clone() * deta.involution()).scale(-0.125);
            Ket::Grassmann(GradedMatrix::column(
                sig,
                vec![
                    deta.scale(-0.5),
                    da.clone() * f.clone() + a.clone() * df.clone(),
                    db.clone() * f + b.clone() * df,
                ],
            )?)
        }
        _ => unreachable!("checked by tangency_residual"),
    })
}

fn pair<R: Scalar>(x: &GradedMatrix<R>, y: &GradedMatrix<R>) -> Result<R> {
    Ok(x.super_dagger().matmul(y)?.get(0, 0).clone())
}

/// `⟨x|y⟩` for two kets over the same ring.
pub fn braket(x: &Ket, y: &Ket) -> Result<RingElement> {
    Ok(match (x, y) {
        (Ket::Complex(x), Ket::Complex(y)) => pair(x, y)?.into(),
        (Ket::Grassmann(x), Ket::Grassmann(y)) => pair(x, y)?.into(),
        (Ket::Quaternion(x), Ket::Quaternion(y)) => pair(x, y)?.into(),
        _ => return domain("kets over different rings"),
    })
}

/// `A(t)[v] = ⟨ψ|dψ⟩`.
pub fn connection_form(t: &TotalPoint, v: &Tangent) -> Result<RingElement> {
    braket(&standard_ket(t), &ket_differential(t, v)?)
}

/// The connection in closed form: `ā da + b̄ db`, and for the graded case
/// `(a∘da + b∘db)(1 − ¼ηη∘) − ⅛(η∘dη + η dη∘)`.
pub fn connection_closed_form(t: &TotalPoint, v: &Tangent) -> Result<RingElement> {
    Ok(match (t, v) {
        (TotalPoint::Monopole { a, b }, Tangent::Monopole { da, db }) => (a.conj() * da + b.conj() * db).into(),
        (TotalPoint::Instanton { a, b }, Tangent::Instanton { da, db }) => (a.conj() * *da + b.conj() * *db).into(),
        (TotalPoint::Graded { a, b, eta }, Tangent::Graded { da, db, deta }) => {
            let n = eta.clone() * eta.involution();
            let body = (a.involution() * da.clone() + b.involution() * db.clone()) * (GrassmannNumber::real(1.0) - n.scale(0.25));
            let odd = (eta.involution() * deta.clone() + eta.clone() * deta.involution()).scale(0.125);
            (body - odd).into()
        }
        _ => return domain(format!("tangent does not belong to the {} total space", t.case())),
    })
}

/// `|A + A†|`.
pub fn anti_hermiticity_residual(a: &RingElement) -> f64 {
    a.checked_add(&a.conj()).map_or(f64::INFINITY, |s| s.max_abs())
}

/// A random point of the total space and a random tangent vector there,
/// drawn through the total-space chart.
pub fn random_tangent<R: Rng + ?Sized>(case: Case, rng: &mut R, alg: &GrassmannAlgebra) -> (TotalPoint, Tangent) {
    let chart_case = if case == Case::Instanton { Case::Instanton } else { Case::Monopole };
    let chart = chart_for(chart_case, total_chart(chart_case)).expect("total chart");
    let u = chart.random_parameters(rng);
    let x = chart.point(&u);
    let jac = chart.jacobian(&u);
    let r: Vec<f64> = (0..chart.dim()).map(|_| rng.sample(StandardNormal)).collect();
    let v: Vec<f64> = jac.iter().map(|row| row.iter().zip(&r).map(|(j, r)| j * r).sum()).collect();
    let c = |s: &[f64]| Complex64::new(s[0], s[1]);
    let q = |s: &[f64]| Quaternion::new(s[0], s[1], s[2], s[3]);
    match case {
        Case::Monopole => (
            TotalPoint::Monopole { a: c(&x[0..2]), b: c(&x[2..4]) },
            Tangent::Monopole { da: c(&v[0..2]), db: c(&v[2..4]) },
        ),
        Case::Instanton => (
            TotalPoint::Instanton { a: q(&x[0..4]), b: q(&x[4..8]) },
            Tangent::Instanton { da: q(&v[0..4]), db: q(&v[4..8]) },
        ),
        Case::Graded => (
            TotalPoint::Graded {
                a: c(&x[0..2]).into(),
                b: c(&x[2..4]).into(),
                eta: alg.random_odd_linear(rng, 1.0),
            },
            Tangent::Graded { da: c(&v[0..2]).into(), db: c(&v[2..4]).into(), deta: alg.random_odd_linear(rng, 1.0) },
        ),
    }
}

/// Deterministic sample of `n` (point, tangent) pairs.
pub fn sample_tangents(case: Case, seed: u64, n: usize, l: usize) -> Result<Vec<(TotalPoint, Tangent)>> {
    let alg = GrassmannAlgebra::new(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| random_tangent(case, &mut rng, &alg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::hopf_project;

    #[test]
    fn anti_hermitian_everywhere() {
        for case in Case::ALL {
            for (t, v) in sample_tangents(case, 11, 300, 4).unwrap() {
                let a = connection_form(&t, &v).unwrap();
                assert!(anti_hermiticity_residual(&a) < 1e-11, "{case}: {a:?}");
                if let RingElement::Quaternion(q) = a {
                    assert!(q.r0.abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn matches_closed_form() {
        for case in Case::ALL {
            for (t, v) in sample_tangents(case, 12, 100, 4).unwrap() {
                let a = connection_form(&t, &v).unwrap();
                let b = connection_closed_form(&t, &v).unwrap();
                let d = match (&a, &b) {
                    (RingElement::Complex(x), RingElement::Complex(y)) => (x - y).norm(),
                    (RingElement::Quaternion(x), RingElement::Quaternion(y)) => (*x - *y).max_abs(),
                    (RingElement::Grassmann(x), RingElement::Grassmann(y)) => (x.clone() - y.clone()).max_abs(),
                    _ => panic!(),
                };
                assert!(d < 1e-13, "{case}: {d}");
            }
        }
    }

    #[test]
    fn tangents_are_tangent_and_points_on_shell() {
        for case in Case::ALL {
            for (t, v) in sample_tangents(case, 13, 50, 2).unwrap() {
                assert!(tangency_residual(&t, &v).unwrap() < 1e-12);
                assert!(hopf_project(&t).is_ok());
            }
        }
    }

    #[test]
    fn rejects_normal_vector() {
        let t = TotalPoint::monopole(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        let v = Tangent::Monopole { da: Complex64::new(1.0, 0.0), db: Complex64::new(0.0, 0.0) };
        assert!(connection_form(&t, &v).is_err());
        let w = Tangent::Instanton { da: Quaternion::i(), db: Quaternion::real(0.0) };
        assert!(connection_form(&t, &w).is_err());
    }

    #[test]
    fn monopole_connection_is_imaginary() {
        for (t, v) in sample_tangents(Case::Monopole, 14, 20, 2).unwrap() {
            let RingElement::Complex(a) = connection_form(&t, &v).unwrap() else { panic!() };
            assert!(a.re.abs() < 1e-14);
        }
    }
}
