//! Chern densities evaluated point by point from a local section and its
//! derivatives, with no symbolic algebra.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{Parity, Scalar};
use crate::bundle::charts::Chart;
use crate::bundle::sections::{CaseRing, KetJet};
use crate::bundle::Case;
use crate::error::{Error, Result};
use crate::forms::quadrature::integrate_density;
use crate::supermatrix::GradedMatrix;

/// A differential form at one point of a chart, with matrix coefficients
/// indexed by the bitmask of `du` directions.
#[derive(Debug, Clone, PartialEq)]
pub struct PointForm<R: Scalar> {
    dim: usize,
    comps: Vec<Option<GradedMatrix<R>>>,
}

fn wedge_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (b & ((1 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl<R: Scalar> PointForm<R> {
    pub fn zero_form(dim: usize, m: GradedMatrix<R>) -> Self {
        let mut comps = vec![None; 1 << dim];
        comps[0] = Some(m);
        PointForm { dim, comps }
    }

    /// `Σⱼ mⱼ duⱼ`.
    pub fn one_form(partials: Vec<GradedMatrix<R>>) -> Self {
        let dim = partials.len();
        let mut comps = vec![None; 1 << dim];
        for (j, m) in partials.into_iter().enumerate() {
            comps[1 << j] = Some(m);
        }
        PointForm { dim, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component(&self, mask: usize) -> Option<&GradedMatrix<R>> {
        self.comps.get(mask).and_then(Option::as_ref)
    }

    pub fn top(&self) -> Option<&GradedMatrix<R>> {
        self.component((1 << self.dim) - 1)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &GradedMatrix<R>)> {
        self.comps.iter().enumerate().filter_map(|(k, c)| c.as_ref().map(|m| (k, m)))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let mut comps: Vec<Option<GradedMatrix<R>>> = vec![None; 1 << self.dim];
        for (a, x) in self.components() {
            for (b, y) in other.components() {
                if a & b != 0 {
                    continue;
                }
                let t = x.matmul(y)?;
                let s = wedge_sign(a, b);
                match &mut comps[a | b] {
                    Some(acc) => acc.add_scaled(&t, s)?,
                    slot => *slot = Some(if s > 0.0 { t } else { t.scale(s) }),
                }
            }
        }
        Ok(PointForm { dim: self.dim, comps })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut comps = self.comps.clone();
        for (k, m) in other.components() {
            comps[k] = Some(match comps[k].take() {
                Some(acc) => acc.try_add(m)?,
                None => m.clone(),
            });
        }
        Ok(PointForm { dim: self.dim, comps })
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&GradedMatrix<R>) -> GradedMatrix<S>) -> PointForm<S> {
        PointForm { dim: self.dim, comps: self.comps.iter().map(|c| c.as_ref().map(&f)).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..self.comps.len())
            .map(|k| match (self.component(k), other.component(k)) {
                (Some(x), Some(y)) => x.max_abs_diff(y),
                (Some(x), None) | (None, Some(x)) => x.max_abs(),
                (None, None) => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// Componentwise trace in the case's convention, projected to ℂ.
    pub fn trace(&self, case: Case) -> Result<PointForm<Complex64>> {
        let mut comps = vec![None; self.comps.len()];
        for (k, m) in self.components() {
            let t = scalar_trace(m, case)?;
            comps[k] = Some(GradedMatrix::from_fn(vec![Parity::Even], vec![Parity::Even], |_, _| t));
        }
        Ok(PointForm { dim: self.dim, comps })
    }
}

impl PointForm<Complex64> {
    pub fn scalar(&self, mask: usize) -> Complex64 {
        self.component(mask).map_or(Complex64::new(0.0, 0.0), |m| *m.get(0, 0))
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        self.map(|m| m.left_scale(&c))
    }
}

/// Plain trace (ℂ), supertrace then body (`C_L`), or `tr_ℍ` of the trace (ℍ).
pub fn scalar_trace<R: Scalar>(m: &GradedMatrix<R>, case: Case) -> Result<Complex64> {
    Ok(match case {
        Case::Monopole => m.trace()?.complex_part(),
        Case::Graded => m.super_trace()?.complex_part(),
        Case::Instanton => m.trace()?.ring_trace().complex_part(),
    })
}

/// `p = ψψ†` and `∂ⱼp = ∂ⱼψ ψ† + ψ ∂ⱼψ†`, (super)transposed if requested.
pub fn projector_jet<R: Scalar>(jet: &KetJet<R>, transposed: bool) -> Result<(GradedMatrix<R>, Vec<GradedMatrix<R>>)> {
    let psi = &jet.value;
    let bra = psi.super_dagger();
    let p = psi.matmul(&bra)?;
    let mut dp = Vec::with_capacity(jet.partials.len());
    for d in &jet.partials {
        dp.push(d.matmul(&bra)?.try_add(&psi.matmul(&d.super_dagger())?)?);
    }
    if transposed {
        Ok((p.super_transpose(), dp.iter().map(GradedMatrix::super_transpose).collect()))
    } else {
        Ok((p, dp))
    }
}

/// `ψ ↦ gψ N^{−1/2}` with `N = ⟨ψ|g†g|ψ⟩`, differentiated by the product rule.
pub fn transform_jet<R: Scalar>(g: &GradedMatrix<R>, jet: &KetJet<R>) -> Result<KetJet<R>> {
    let v = g.matmul(&jet.value)?;
    let vb = v.super_dagger();
    let n = vb.matmul(&v)?.get(0, 0).clone();
    if n.real_body() <= 0.0 {
        return Err(Error::Singular(format!("⟨ψ|g†g|ψ⟩ has body {:.3e}", n.real_body())));
    }
    let s = n.sqrt_positive()?.inverse()?;
    let s3 = s.clone() * s.clone() * s.clone();
    let value = v.right_scale(&s);
    let mut partials = Vec::with_capacity(jet.partials.len());
    for d in &jet.partials {
        let dv = g.matmul(d)?;
        let dn = dv.super_dagger().matmul(&v)?.try_add(&vb.matmul(&dv)?)?.get(0, 0).clone();
        let ds = (s3.clone() * dn).scale(-0.5);
        partials.push(dv.right_scale(&s).try_add(&v.right_scale(&ds))?);
    }
    Ok(KetJet { value, partials })
}

/// The Chern densities at one point, as forms in the chart parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernDensity {
    pub c1: PointForm<Complex64>,
    /// Top component of `C₂`, on four-dimensional charts.
    pub c2: Option<Complex64>,
}

pub fn chern_density<R: Scalar>(case: Case, p: &GradedMatrix<R>, dp: Vec<GradedMatrix<R>>) -> Result<ChernDensity> {
    let dim = dp.len();
    let p = PointForm::zero_form(dim, p.clone());
    let dp = PointForm::one_form(dp);
    let dp2 = dp.wedge(&dp)?;
    let f = p.wedge(&dp2)?;
    let c1 = f.trace(case)?.scale_complex(Complex64::new(0.0, 1.0 / (2.0 * PI)));
    let c2 = if dim == 4 {
        let t4 = f.wedge(&dp2)?.trace(case)?.scalar(15);
        let cc = c1.wedge(&c1)?.scalar(15);
        Some((t4 - cc) * (-1.0 / (8.0 * PI * PI)))
    } else {
        None
    };
    Ok(ChernDensity { c1, c2 })
}

/// The density at chart parameters `u` for the projector built from the
/// local section, optionally moved by `g`.
pub fn density_at<R: CaseRing>(chart: &Chart, u: &[f64], transposed: bool, g: Option<&GradedMatrix<R>>) -> Result<ChernDensity> {
    let x = chart.point(u);
    let jet = R::local_section(&x).along(&chart.jacobian(u));
    let jet = match g {
        Some(g) => transform_jet(g, &jet)?,
        None => jet,
    };
    let (p, dp) = projector_jet(&jet, transposed)?;
    chern_density(R::CASE, &p, dp)
}

/// The charge density in chart parameters: top component of `C₁` on
/// two-dimensional bases and of `C₂` on four-dimensional ones.
pub fn charge_density<R: CaseRing>(chart: &Chart, u: &[f64], transposed: bool, g: Option<&GradedMatrix<R>>) -> Result<Complex64> {
    let d = density_at(chart, u, transposed, g)?;
    Ok(match d.c2 {
        Some(c2) => c2,
        None => d.c1.scalar(3),
    })
}

/// `∫` of the charge density by quadrature.
pub fn pointwise_charge<R: CaseRing>(chart: &Chart, order: usize, transposed: bool, g: Option<&GradedMatrix<R>>) -> Result<Complex64> {
    let mut err = None;
    let total = integrate_density(chart, order, |u| match charge_density(chart, u, transposed, g) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// `|p(dp)² − |ψ⟩(A² + ⟨dψ|dψ⟩)⟨ψ||` at chart parameters `u`, with
/// `A = ⟨ψ|dψ⟩` along the local section.
pub fn curvature_identity_residual<R: CaseRing>(chart: &Chart, u: &[f64]) -> Result<f64> {
    let jet = R::local_section(&chart.point(u)).along(&chart.jacobian(u));
    let dim = jet.partials.len();
    let (p, dp) = projector_jet(&jet, false)?;
    let p = PointForm::zero_form(dim, p);
    let dp = PointForm::one_form(dp);
    let lhs = p.wedge(&dp)?.wedge(&dp)?;
    let ket = PointForm::zero_form(dim, jet.value.clone());
    let bra = PointForm::zero_form(dim, jet.value.super_dagger());
    let dket = PointForm::one_form(jet.partials.clone());
    let dbra = dket.map(GradedMatrix::super_dagger);
    let a = bra.wedge(&dket)?;
    let middle = a.wedge(&a)?.try_add(&dbra.wedge(&dket)?)?;
    let rhs = ket.wedge(&middle)?.wedge(&bra)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// `|tr(p(dp)²) − ⟨dψ|dψ⟩|` at chart parameters `u`.
pub fn trace_identity_residual<R: CaseRing>(chart: &Chart, u: &[f64]) -> Result<f64> {
    let jet = R::local_section(&chart.point(u)).along(&chart.jacobian(u));
    let dim = jet.partials.len();
    let (p, dp) = projector_jet(&jet, false)?;
    let dp = PointForm::one_form(dp);
    let lhs = PointForm::zero_form(dim, p).wedge(&dp)?.wedge(&dp)?.trace(R::CASE)?;
    let dket = PointForm::one_form(jet.partials.clone());
    let rhs = dket.map(GradedMatrix::super_dagger).wedge(&dket)?.trace(R::CASE)?;
    Ok(lhs.max_abs_diff(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GrassmannNumber, Quaternion};
    use crate::bundle::charts::base_charts;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn curvature_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s2 = Chart::by_name(base_charts(Case::Monopole)[0]).unwrap();
        let s4 = Chart::by_name(base_charts(Case::Instanton)[0]).unwrap();
        for _ in 0..100 {
            let u = s2.random_parameters(&mut rng);
            assert!(curvature_identity_residual::<Complex64>(&s2, &u).unwrap() < 1e-12);
            assert!(trace_identity_residual::<Complex64>(&s2, &u).unwrap() < 1e-12);
            let u = s4.random_parameters(&mut rng);
            assert!(curvature_identity_residual::<Quaternion>(&s4, &u).unwrap() < 1e-10);
        }
    }

    #[test]
    fn instanton_connection_square_is_nonzero() {
        let s4 = Chart::by_name(base_charts(Case::Instanton)[0]).unwrap();
        let u = [0.7, 1.1, 2.0, 4.0];
        let jet = Quaternion::local_section(&s4.point(&u)).along(&s4.jacobian(&u));
        let bra = PointForm::zero_form(4, jet.value.super_dagger());
        let a = bra.wedge(&PointForm::one_form(jet.partials.clone())).unwrap();
        assert!(a.wedge(&a).unwrap().components().any(|(_, m)| m.max_abs() > 1e-3));
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1.0);
        assert_eq!(wedge_sign(0b10, 0b01), -1.0);
        assert_eq!(wedge_sign(0b0101, 0b1010), -1.0);
        assert_eq!(wedge_sign(0b0011, 0b1100), 1.0);
    }

    fn charges<R: CaseRing>(order: usize) -> [f64; 2] {
        let chart = Chart::by_name(base_charts(R::CASE)[0]).unwrap();
        [false, true].map(|t| {
            let v = pointwise_charge::<R>(&chart, order, t, None).unwrap();
            assert!(v.im.abs() < 1e-10, "{v}");
            v.re
        })
    }

    #[test]
    fn monopole_and_graded_charges() {
        for v in [charges::<Complex64>(24), charges::<GrassmannNumber>(24)] {
            assert!((v[0] + 1.0).abs() < 1e-10 && (v[1] - 1.0).abs() < 1e-10, "{v:?}");
        }
    }

    #[test]
    fn instanton_charge() {
        let v = charges::<Quaternion>(12);
        assert!((v[0] + 1.0).abs() < 1e-6 && (v[1] - 1.0).abs() < 1e-6, "{v:?}");
    }

    #[test]
    fn instanton_c1_vanishes_pointwise() {
        let chart = Chart::by_name(base_charts(Case::Instanton)[0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let u = chart.random_parameters(&mut rng);
            let d = density_at::<Quaternion>(&chart, &u, false, None).unwrap();
            assert!(d.c1.components().all(|(_, m)| m.max_abs() < 1e-12));
        }
    }

    #[test]
    fn density_is_section_independent() {
        // at the equator both sections apply; nudge across it
        let chart = Chart::by_name(base_charts(Case::Monopole)[0]).unwrap();
        let a = charge_density::<Complex64>(&chart, &[std::f64::consts::FRAC_PI_2 - 1e-9, 0.7], false, None).unwrap();
        let b = charge_density::<Complex64>(&chart, &[std::f64::consts::FRAC_PI_2 + 1e-9, 0.7], false, None).unwrap();
        assert!((a - b).norm() < 1e-7);
    }

    #[test]
    fn unitary_transform_keeps_density() {
        let chart = Chart::by_name(base_charts(Case::Monopole)[0]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g = GradedMatrix::from_rows(vec![
            vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)],
            vec![Complex64::new(0.0, s), Complex64::new(s, 0.0)],
        ])
        .unwrap();
        let u = [0.9, 2.0];
        let a = charge_density::<Complex64>(&chart, &u, false, None).unwrap();
        let b = charge_density::<Complex64>(&chart, &u, false, Some(&g)).unwrap();
        // a rotation of the sphere, which preserves vol
        assert!((a - b).norm() < 1e-12);
    }
}
