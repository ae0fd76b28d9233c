//! Projectors, connections, curvature, Chern forms and charges, and the
//! action of unitary and general linear groups on them.

pub mod connection;
pub mod orbit;
pub mod pointwise;
pub mod symbolic;

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{GrassmannAlgebra, GrassmannNumber, Quaternion, Scalar};
use crate::bundle::charts::{base_charts, chart_for, Chart};
use crate::bundle::sections::CaseRing;
use crate::bundle::{
    hopf_project, random_fiber_element, random_total_point, right_action, standard_ket, BasePoint, Case, Ket, TotalPoint,
};
use crate::error::{Error, Result};
use crate::forms::{integrate, volume_form, Pullback, Var};
use crate::supermatrix::GradedMatrix;

pub use connection::{connection_closed_form, connection_form, Tangent};
pub use orbit::{
    dimension_check, gl_transform, instanton_family, su_transform, CaseMatrix, DimensionCheck, GaugeElement,
    OrbitReport, TransformKind,
};
pub use symbolic::{chern_forms, curvature, projector, ChernForms, SymbolicMatrix};

/// Which projector: `p = |ψ⟩⟨ψ|` or its (super)transpose `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectorCase {
    pub case: Case,
    pub transposed: bool,
}

impl ProjectorCase {
    pub fn new(case: Case, transposed: bool) -> Self {
        ProjectorCase { case, transposed }
    }

    /// All six projectors, `p` before `q` within each case.
    pub fn all() -> Vec<ProjectorCase> {
        Case::ALL.iter().flat_map(|&c| [ProjectorCase::new(c, false), ProjectorCase::new(c, true)]).collect()
    }

    /// The charge the construction must produce: `−1` for `p`, `+1` for `q`.
    pub fn expected_charge(self) -> f64 {
        if self.transposed {
            1.0
        } else {
            -1.0
        }
    }

    pub fn label(self) -> String {
        format!("{}-{}", self.case, if self.transposed { "q" } else { "p" })
    }

    pub fn size(self) -> usize {
        self.case.signature().len()
    }
}

/// The projector at a total-space point built from kets: `ψψ†` for `p`;
/// for `q`, `φφ†` with `φ = ψ̄` (ℂ) or `φ = (½η∘, a∘f, b∘f)` (`C_L`), and
/// `q_ij = ψ_j ψ̄_i` in the right-module convention (ℍ).
pub fn projector_from_ket(pc: ProjectorCase, t: &TotalPoint) -> Result<CaseMatrix> {
    fn outer<R: Scalar>(k: &GradedMatrix<R>) -> Result<GradedMatrix<R>> {
        k.matmul(&k.super_dagger())
    }
    if t.case() != pc.case {
        return Err(Error::Domain(format!("{} point for a {} projector", t.case(), pc.case)));
    }
    let ket = standard_ket(t);
    Ok(match (ket, pc.transposed) {
        (Ket::Complex(k), false) => CaseMatrix::Complex(outer(&k)?),
        (Ket::Grassmann(k), false) => CaseMatrix::Grassmann(outer(&k)?),
        (Ket::Quaternion(k), false) => CaseMatrix::Quaternion(outer(&k)?),
        (Ket::Complex(k), true) => CaseMatrix::Complex(outer(&k.map(|z| z.conj()))?),
        (Ket::Grassmann(_), true) => {
            let TotalPoint::Graded { a, b, eta } = t else { unreachable!() };
            let f = GrassmannNumber::real(1.0) - (eta.clone() * eta.involution()).scale(0.125);
            let phi = GradedMatrix::column(
                pc.case.signature(),
                vec![eta.involution().scale(0.5), a.involution() * f.clone(), b.involution() * f],
            )?;
            CaseMatrix::Grassmann(outer(&phi)?)
        }
        (Ket::Quaternion(k), true) => {
            let psi = k.entries();
            CaseMatrix::Quaternion(GradedMatrix::from_fn(pc.case.signature(), pc.case.signature(), |i, j| {
                psi[j] * psi[i].conj()
            }))
        }
    })
}

/// The symbolic projector evaluated at a base point.
pub fn projector_at(pc: ProjectorCase, x: &BasePoint) -> Result<CaseMatrix> {
    if x.case() != pc.case {
        return Err(Error::Domain(format!("{} point for a {} projector", x.case(), pc.case)));
    }
    Ok(match (projector(pc), x) {
        (SymbolicMatrix::Complex(m), BasePoint::Monopole(xs)) => CaseMatrix::Complex(m.evaluate(
            |c| *c,
            |v| match v {
                Var::X(i) => Complex64::new(xs[i as usize], 0.0),
                _ => Complex64::new(0.0, 0.0),
            },
        )?),
        (SymbolicMatrix::Complex(m), BasePoint::Graded { x, xi_minus, xi_plus }) => CaseMatrix::Grassmann(m.evaluate(
            |c| GrassmannNumber::scalar(*c),
            |v| match v {
                Var::X(i) => x[i as usize].clone(),
                Var::Xi(0) => xi_minus.clone(),
                Var::Xi(1) => xi_plus.clone(),
                _ => GrassmannNumber::zero(),
            },
        )?),
        (SymbolicMatrix::Quaternion(m), BasePoint::Instanton(xs)) => CaseMatrix::Quaternion(m.evaluate(
            |c| *c,
            |v| match v {
                Var::X(i) => Quaternion::real(xs[i as usize]),
                _ => Quaternion::real(0.0),
            },
        )?),
        _ => unreachable!("case checked above"),
    })
}

/// Maximum residuals of the projector identities over a sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectorResiduals {
    pub projector: ProjectorCase,
    pub samples: usize,
    /// `|p² − p|`.
    pub idempotency: f64,
    /// `|p − p†|`.
    pub hermiticity: f64,
    /// `|tr p − 1|`, supertrace in the graded case.
    pub trace: f64,
    /// `|p(ket) − p(symbolic)|` on the sphere.
    pub symbolic_agreement: f64,
    /// `|p(t·w) − p(t)|`.
    pub right_action: f64,
}

fn identities<R: Scalar>(p: &GradedMatrix<R>, graded: bool) -> Result<(f64, f64, f64)> {
    let tr = if graded { p.super_trace()? } else { p.trace()? };
    Ok((p.matmul(p)?.max_abs_diff(p), p.super_dagger().max_abs_diff(p), (tr - R::one()).max_abs()))
}

pub fn projector_identities(pc: ProjectorCase, seed: u64, n: usize, l: usize) -> Result<ProjectorResiduals> {
    let alg = GrassmannAlgebra::new(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = ProjectorResiduals {
        projector: pc,
        samples: n,
        idempotency: 0.0,
        hermiticity: 0.0,
        trace: 0.0,
        symbolic_agreement: 0.0,
        right_action: 0.0,
    };
    for _ in 0..n {
        let t = random_total_point(pc.case, &mut rng, &alg);
        let w = random_fiber_element(pc.case, &mut rng, &alg);
        let p = projector_from_ket(pc, &t)?;
        let (i, h, tr) = match &p {
            CaseMatrix::Complex(m) => identities(m, false)?,
            CaseMatrix::Grassmann(m) => identities(m, true)?,
            CaseMatrix::Quaternion(m) => identities(m, false)?,
        };
        r.idempotency = r.idempotency.max(i);
        r.hermiticity = r.hermiticity.max(h);
        r.trace = r.trace.max(tr);
        r.symbolic_agreement = r.symbolic_agreement.max(p.max_abs_diff(&projector_at(pc, &hopf_project(&t)?)?));
        r.right_action = r.right_action.max(p.max_abs_diff(&projector_from_ket(pc, &right_action(&t, &w)?)?));
    }
    Ok(r)
}

/// Quadrature settings for [`charge`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeOptions {
    pub order: usize,
    /// Chart points at which densities are compared before integration.
    pub density_samples: usize,
    pub seed: u64,
    /// Allowed disagreement between routes and between charts.
    pub convergence_tol: f64,
}

impl ChargeOptions {
    pub fn new(order: usize) -> Self {
        ChargeOptions { order, density_samples: 100, seed: 0, convergence_tol: 1e-6 }
    }
}

/// Default quadrature order: 32 on `S²`, 24 on `S⁴`.
pub fn default_order(case: Case) -> usize {
    if case.base_dim() == 2 {
        32
    } else {
        24
    }
}

/// Volume of the unit base sphere.
pub fn base_volume(case: Case) -> f64 {
    if case.base_dim() == 2 {
        4.0 * PI
    } else {
        8.0 * PI * PI / 3.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureInfo {
    pub chart: String,
    pub alternate_chart: String,
    pub order: usize,
    pub nodes: usize,
}

/// Charge density at one chart point by both routes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensitySample {
    pub u: Vec<f64>,
    pub symbolic: f64,
    pub pointwise: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChargeReport {
    pub case: Case,
    pub transposed: bool,
    pub label: String,
    /// First Chern number; on `S⁴` the largest coefficient of the form `C₁`.
    pub c1: f64,
    pub c2: Option<f64>,
    pub expected: f64,
    pub charge_error: f64,
    /// The charge integrated from pointwise densities.
    pub pointwise: f64,
    pub route_difference: f64,
    /// The charge integrated over the alternate chart.
    pub alternate_chart_value: f64,
    pub chart_difference: f64,
    /// `|∫vol / vol − 1|` at the same order, the convergence diagnostic.
    pub volume_error: f64,
    pub imaginary: f64,
    /// Largest pointwise `|C₁|` component over the density samples, on `S⁴`.
    pub c1_max_density: Option<f64>,
    /// Largest coefficient of `C₂ − (−1/8π²) tr(p(dp)⁴)`, on `S⁴`.
    pub c2_cross_check: Option<f64>,
    /// `expected / vol`, the constant the density should be a multiple of.
    pub proportionality: f64,
    /// `max |density / vol-density − proportionality|` over the samples.
    pub proportionality_residual: f64,
    pub quadrature: QuadratureInfo,
    pub densities: Vec<DensitySample>,
    /// Not serialized; reports carry timings in a separate section.
    #[serde(skip)]
    pub wall_time_s: f64,
}

impl ChargeReport {
    /// The integer-valued charge of the case: `c₁` on `S²`, `c₂` on `S⁴`.
    pub fn charge(&self) -> f64 {
        self.c2.unwrap_or(self.c1)
    }
}

fn pointwise_route(pc: ProjectorCase, chart: &Chart, order: usize) -> Result<Complex64> {
    match pc.case {
        Case::Monopole => pointwise::pointwise_charge::<Complex64>(chart, order, pc.transposed, None),
        Case::Graded => pointwise::pointwise_charge::<GrassmannNumber>(chart, order, pc.transposed, None),
        Case::Instanton => pointwise::pointwise_charge::<Quaternion>(chart, order, pc.transposed, None),
    }
}

fn density_route(pc: ProjectorCase, chart: &Chart, u: &[f64]) -> Result<pointwise::ChernDensity> {
    fn go<R: CaseRing>(chart: &Chart, u: &[f64], t: bool) -> Result<pointwise::ChernDensity> {
        pointwise::density_at::<R>(chart, u, t, None)
    }
    match pc.case {
        Case::Monopole => go::<Complex64>(chart, u, pc.transposed),
        Case::Graded => go::<GrassmannNumber>(chart, u, pc.transposed),
        Case::Instanton => go::<Quaternion>(chart, u, pc.transposed),
    }
}

/// Integrates the charge form of the projector by the symbolic route on
/// two charts and by the pointwise route, after checking the density is
/// the expected multiple of the volume form.
pub fn charge(pc: ProjectorCase, opts: &ChargeOptions) -> Result<ChargeReport> {
    let start = Instant::now();
    let [main, alt] = base_charts(pc.case);
    let (chart, alt_chart) = (chart_for(pc.case, main)?, chart_for(pc.case, alt)?);
    let forms = chern_forms(pc)?;
    let top = symbolic::charge_form(pc)?;
    let ambient = pc.case.base_dim() + 1;
    let k = pc.expected_charge() / base_volume(pc.case);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pull = Pullback::new(&top, &chart)?;
    let vol = volume_form(ambient);
    let mut pull_vol = Pullback::new(&vol, &chart)?;
    let mut densities = Vec::with_capacity(opts.density_samples);
    let (mut prop, mut c1_max) = (0.0f64, 0.0f64);
    for _ in 0..opts.density_samples {
        let u = chart.random_parameters(&mut rng);
        let s = pull.at(&u);
        let v = pull_vol.at(&u).re;
        let d = density_route(pc, &chart, &u)?;
        let pw = d.c2.unwrap_or_else(|| d.c1.scalar(3));
        if v.abs() > 1e-8 {
            prop = prop.max((s.re / v - k).abs()).max(s.im.abs() / v.abs());
        }
        if d.c2.is_some() {
            c1_max = d.c1.components().fold(c1_max, |m, (_, x)| m.max(x.max_abs()));
        }
        densities.push(DensitySample { u, symbolic: s.re, pointwise: pw.re });
    }

    let sym = integrate(&top, &chart, opts.order)?;
    let alt_v = integrate(&top, &alt_chart, opts.order)?;
    let pw = pointwise_route(pc, &chart, opts.order)?;
    let route_difference = (sym.value - pw.re).abs().max(pw.im.abs());
    let chart_difference = (sym.value - alt_v.value).abs();
    let volume_error = (integrate(&vol, &chart, opts.order)?.value / base_volume(pc.case) - 1.0).abs();
    if !(route_difference <= opts.convergence_tol
        && chart_difference <= opts.convergence_tol
        && volume_error <= opts.convergence_tol)
    {
        return Err(Error::Numeric(format!(
            "{} charge did not converge at order {}: relative volume error {:.3e}, symbolic {:.12} on {}, {:.12} on {}, pointwise {:.12}",
            pc.label(),
            opts.order,
            volume_error,
            sym.value,
            chart.name(),
            alt_v.value,
            alt_chart.name(),
            pw.re
        )));
    }
    let four = pc.case.base_dim() == 4;
    let c1 = if four { forms.c1.max_abs() } else { sym.value };
    let c2_cross_check = match (&forms.c2, &forms.c2_plain) {
        (Some(a), Some(b)) => Some(a.max_abs_diff(b)),
        _ => None,
    };
    Ok(ChargeReport {
        case: pc.case,
        transposed: pc.transposed,
        label: pc.label(),
        c1,
        c2: four.then_some(sym.value),
        expected: pc.expected_charge(),
        charge_error: (sym.value - pc.expected_charge()).abs(),
        pointwise: pw.re,
        route_difference,
        alternate_chart_value: alt_v.value,
        chart_difference,
        volume_error,
        imaginary: sym.imaginary,
        c1_max_density: four.then_some(c1_max),
        c2_cross_check,
        proportionality: k,
        proportionality_residual: prop,
        quadrature: QuadratureInfo {
            chart: chart.name().to_string(),
            alternate_chart: alt_chart.name().to_string(),
            order: opts.order,
            nodes: sym.nodes,
        },
        densities,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Distinct charges separate `p` from `q`.
pub fn inequivalent(p: &ChargeReport, q: &ChargeReport) -> bool {
    p.case == q.case && p.transposed != q.transposed && (p.charge().round() - q.charge().round()).abs() >= 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projector_identities_hold() {
        for pc in ProjectorCase::all() {
            let r = projector_identities(pc, 1, 200, 4).unwrap();
            assert!(r.idempotency < 1e-12 && r.hermiticity < 1e-12 && r.trace < 1e-12, "{r:?}");
            assert!(r.symbolic_agreement < 1e-12 && r.right_action < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn transposed_ket_matches_transpose() {
        for pc in ProjectorCase::all().into_iter().filter(|p| p.transposed) {
            for t in crate::bundle::sample(pc.case, 2, 50) {
                let q = projector_from_ket(pc, &t).unwrap();
                let p = projector_from_ket(ProjectorCase::new(pc.case, false), &t).unwrap();
                let pt = match p {
                    CaseMatrix::Complex(m) => CaseMatrix::Complex(m.super_transpose()),
                    CaseMatrix::Grassmann(m) => CaseMatrix::Grassmann(m.super_transpose()),
                    CaseMatrix::Quaternion(m) => CaseMatrix::Quaternion(m.super_transpose()),
                };
                assert!(q.max_abs_diff(&pt) < 1e-13, "{}", pc.label());
            }
        }
    }

    #[test]
    fn monopole_charges() {
        let p = charge(ProjectorCase::new(Case::Monopole, false), &ChargeOptions::new(32)).unwrap();
        let q = charge(ProjectorCase::new(Case::Monopole, true), &ChargeOptions::new(32)).unwrap();
        assert!(p.charge_error < 1e-8 && q.charge_error < 1e-8, "{p:?}");
        assert!(p.proportionality_residual < 1e-12 && p.route_difference < 1e-12);
        assert!(inequivalent(&p, &q));
    }

    #[test]
    fn graded_charges() {
        for t in [false, true] {
            let r = charge(ProjectorCase::new(Case::Graded, t), &ChargeOptions::new(32)).unwrap();
            assert!(r.charge_error < 1e-8, "{r:?}");
        }
    }

    #[test]
    fn coarse_quadrature_reports_non_convergence() {
        let err = charge(ProjectorCase::new(Case::Monopole, false), &ChargeOptions::new(2)).unwrap_err();
        assert!(matches!(err, Error::Numeric(_)), "{err}");
    }

    #[test]
    fn instanton_charge_report() {
        let r = charge(ProjectorCase::new(Case::Instanton, false), &ChargeOptions::new(12)).unwrap();
        assert!(r.charge_error < 1e-6 && r.c1 == 0.0 && r.c1_max_density.unwrap() < 1e-10, "{r:?}");
        assert!(r.c2_cross_check.unwrap() < 1e-15);
    }
}
