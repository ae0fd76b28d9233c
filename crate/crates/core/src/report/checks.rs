//! Property suites shared by the `verify` and `selftest` commands.
//!
//! Each suite returns named residuals with the threshold they are held to.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::algebra::{GrassmannAlgebra, GrassmannNumber, Parity, Quaternion, RingElement};
use crate::bundle::charts::{chart_for, Chart, S2_SPHERICAL, S2_SPHERICAL_ALT, S4_HYPERSPHERICAL, S4_HYPERSPHERICAL_ALT};
use crate::bundle::Case;
use crate::error::{Error, Result};
use crate::forms::{integrate, random_form, volume_form, FormMatrix, GradedForm};
use crate::gauge::connection::{anti_hermiticity_residual, sample_tangents};
use crate::gauge::symbolic::charge_form;
use crate::gauge::{connection_closed_form, connection_form, projector_identities, ProjectorCase};
use crate::supermatrix::{
    one_parameter_product, random_self_conjugate_even, random_uosp, super_u1_act, uosp_adjoint_closed_form,
    uosp_closed_form, GradedMatrix, SuperU1Element,
};

/// One named residual and its verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `null` when the check could not be evaluated or is a yes/no check.
    pub residual: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn residual(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Check { name: name.into(), residual: Some(residual), threshold, pass: residual <= threshold, detail: None }
    }

    pub fn flag(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), residual: None, threshold: 0.0, pass, detail: Some(detail.into()) }
    }

    pub fn error(name: impl Into<String>, threshold: f64, err: &Error) -> Self {
        Check { name: name.into(), residual: None, threshold, pass: false, detail: Some(err.to_string()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

fn push(out: &mut Vec<Check>, name: &str, threshold: f64, r: Result<f64>) {
    out.push(match r {
        Ok(v) => Check::residual(name, v, threshold),
        Err(e) => Check::error(name, threshold, &e),
    });
}

/// Sparse Grassmann element with small integer coefficients, so products are
/// exact in floating point.
fn sparse_grassmann<R: Rng + ?Sized>(rng: &mut R, l: usize) -> GrassmannNumber {
    let n = rng.random_range(1..=5);
    GrassmannNumber::from_terms((0..n).map(|_| {
        let mask = rng.random_range(0..(1u32 << l));
        let c = Complex64::new(rng.random_range(-3..=3) as f64, rng.random_range(-3..=3) as f64);
        (mask, c)
    }))
}

fn gaussian_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let mut c = [0.0; 4];
    for x in &mut c {
        *x = rng.sample(StandardNormal);
    }
    Quaternion::from_components(c)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ring_diff(a: &RingElement, b: &RingElement) -> f64 {
    match (a, b) {
        (RingElement::Complex(x), RingElement::Complex(y)) => (x - y).norm(),
        (RingElement::Quaternion(x), RingElement::Quaternion(y)) => (*x - *y).max_abs(),
        (RingElement::Grassmann(x), RingElement::Grassmann(y)) => g_diff(x.clone(), y.clone()),
        _ => f64::INFINITY,
    }
}

fn g_diff(a: GrassmannNumber, b: GrassmannNumber) -> f64 {
    (a - b).max_abs()
}

/// Ring and involution axioms on random triples, all monomials for the
/// involution, body multiplicativity and cyclicity of the quaternionic trace.
pub fn algebra_suite(seed: u64, n: usize, l: usize) -> Result<Vec<Check>> {
    let alg = GrassmannAlgebra::new(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut g_assoc, mut g_dist, mut g_inv_mul, mut g_body, mut g_conj) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut q_assoc, mut q_dist, mut q_cyc, mut c_ring) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let (x, y, z) = (sparse_grassmann(&mut rng, l), sparse_grassmann(&mut rng, l), sparse_grassmann(&mut rng, l));
        g_assoc = g_assoc.max(g_diff((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone())));
        g_dist = g_dist.max(g_diff(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone()));
        g_dist = g_dist.max(g_diff((y.clone() + z.clone()) * x.clone(), y.clone() * x.clone() + z.clone() * x.clone()));
        g_inv_mul = g_inv_mul.max(g_diff((x.clone() * y.clone()).involution(), x.involution() * y.involution()));
        g_body = g_body.max(((x.clone() * y.clone()).body() - x.body() * y.body()).norm());
        let c = Complex64::new(rng.random_range(-3..=3) as f64, rng.random_range(-3..=3) as f64);
        g_conj = g_conj.max(g_diff(x.scale_complex(c).involution(), x.involution().scale_complex(c.conj())));

        let (p, q, r) = (gaussian_quaternion(&mut rng), gaussian_quaternion(&mut rng), gaussian_quaternion(&mut rng));
        q_assoc = q_assoc.max(((p * q) * r - p * (q * r)).max_abs());
        q_dist = q_dist.max((p * (q + r) - (p * q + p * r)).max_abs()).max(((q + r) * p - (q * p + r * p)).max_abs());
        q_cyc = q_cyc.max(((p * q).trace() - (q * p).trace()).norm());

        let (a, b, e) = (gaussian_complex(&mut rng), gaussian_complex(&mut rng), gaussian_complex(&mut rng));
        c_ring = c_ring.max(((a * b) * e - a * (b * e)).norm()).max((a * (b + e) - (a * b + a * e)).norm());
    }
    let mut inv_sq = 0.0f64;
    for m in alg.monomial_masks() {
        let x = GrassmannNumber::from_terms([(m, Complex64::new(1.0, -2.0))]);
        let sign = if m.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        inv_sq = inv_sq.max(g_diff(x.involution().involution(), x.scale_complex(Complex64::new(sign, 0.0))));
    }
    Ok(vec![
        Check::residual("algebra.grassmann.associativity", g_assoc, 1e-14),
        Check::residual("algebra.grassmann.distributivity", g_dist, 1e-14),
        Check::residual("algebra.grassmann.involution_square", inv_sq, 0.0).with_detail(format!("{} monomials, L = {l}", 1u64 << l)),
        Check::residual("algebra.grassmann.involution_multiplicative", g_inv_mul, 1e-14),
        Check::residual("algebra.grassmann.involution_antilinear", g_conj, 1e-14),
        Check::residual("algebra.grassmann.body_multiplicative", g_body, 1e-14),
        Check::residual("algebra.quaternion.associativity", q_assoc, 1e-12),
        Check::residual("algebra.quaternion.distributivity", q_dist, 1e-12),
        Check::residual("algebra.quaternion.trace_cyclic", q_cyc, 1e-12),
        Check::residual("algebra.complex.ring_axioms", c_ring, 1e-12),
    ])
}

/// `d² = 0`, graded Leibniz and wedge associativity on random forms with
/// coefficients in `C₂`.
pub fn exterior_suite(seed: u64, n: usize) -> Result<Vec<Check>> {
    let alg = GrassmannAlgebra::new(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut dd, mut leibniz, mut assoc) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let a = random_form(&mut rng, &alg, 4);
        let b = random_form(&mut rng, &alg, 4);
        dd = dd.max(a.d().d().max_abs()).max(b.d().d().max_abs());
        for (m, ca) in a.terms() {
            let t = GradedForm::term(ca.clone(), m.clone());
            let sign = if m.degree() % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = t.d().wedge(&b) + t.wedge(&b.d()).scale(sign);
            leibniz = leibniz.max(t.wedge(&b).d().max_abs_diff(&rhs));
        }
    }
    let sig = vec![Parity::Odd, Parity::Even, Parity::Even];
    for _ in 0..n.div_ceil(10) {
        let mut gen = || FormMatrix::from_fn(sig.clone(), sig.clone(), |_, _| random_form(&mut rng, &alg, 2));
        let (x, y, z) = (gen(), gen(), gen());
        let l = x.wedge(&y)?.wedge(&z)?;
        let r = x.wedge(&y.wedge(&z)?)?;
        assoc = assoc.max(l.max_abs_diff(&r));
    }
    Ok(vec![
        Check::residual("forms.d_squared", dd, 1e-13).with_detail(format!("{} random forms", 2 * n)),
        Check::residual("forms.leibniz", leibniz, 1e-13),
        Check::residual("forms.wedge_associativity", assoc, 1e-12),
    ])
}

/// Unitarity and unit Berezinian of random `UOSP(1,2)` elements, the
/// one-parameter product against the closed form, the adjoint against its
/// closed form, and the `𝒰(1)` action.
pub fn supergroup_suite(seed: u64, n: usize, l: usize) -> Result<Vec<Check>> {
    let alg = GrassmannAlgebra::new(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = GrassmannNumber::real(1.0);
    let (mut unit, mut sdet, mut dagger, mut exp, mut act) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let s = random_uosp(&alg, &mut rng)?;
        unit = unit.max(s.unitarity_residual());
        sdet = sdet.max(g_diff(s.sdet()?, one.clone()));
        dagger = dagger.max(s.dagger().max_abs_diff(&uosp_adjoint_closed_form(s.a(), s.b(), s.eta())));

        let angle = |rng: &mut ChaCha8Rng| {
            let body = rng.random_range(-3.0..3.0);
            random_self_conjugate_even(&alg, rng, body)
        };
        let (a0, a1, a2) = (angle(&mut rng), angle(&mut rng), angle(&mut rng));
        let eta = alg.random_homogeneous(&mut rng, Parity::Odd);
        let (u, xi) = one_parameter_product(&a0, &a1, &a2, &eta)?;
        let closed = uosp_closed_form(u.get(1, 1), u.get(2, 1), &eta);
        exp = exp.max(u.matmul(&xi)?.max_abs_diff(&closed));

        let w = SuperU1Element::new(angle(&mut rng))?;
        let acted = super_u1_act(&s, &w)?;
        act = act
            .max(acted.matrix().max_abs_diff(&s.matrix().matmul(&w.matrix())?))
            .max(g_diff(acted.sdet()?, one.clone()));
    }
    let identity: GradedMatrix<GrassmannNumber> = GradedMatrix::identity(Case::Graded.signature());
    let exp0 = GradedMatrix::<GrassmannNumber>::zeros(Case::Graded.signature(), Case::Graded.signature()).exp()?;
    Ok(vec![
        Check::residual("supergroup.unitarity", unit, 1e-12).with_detail(format!("{n} random elements, L = {l}")),
        Check::residual("supergroup.sdet", sdet, 1e-12),
        Check::residual("supergroup.adjoint_closed_form", dagger, 1e-12),
        Check::residual("supergroup.exp_closed_form", exp, 1e-10),
        Check::residual("supergroup.exp_zero", exp0.max_abs_diff(&identity), 0.0),
        Check::residual("supergroup.u1_action", act, 1e-12),
    ])
}

fn integral_error(f: &GradedForm<Complex64>, chart: &Chart, order: usize, exact: f64) -> Result<f64> {
    Ok((integrate(f, chart, order)?.value - exact).abs())
}

/// Quadrature of the sphere volumes, a second moment, and agreement between
/// two charts.
pub fn volume_suite(s2_order: usize, s4_order: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let s2 = chart_for(Case::Monopole, S2_SPHERICAL);
    let s2_alt = chart_for(Case::Monopole, S2_SPHERICAL_ALT);
    let s4 = chart_for(Case::Instanton, S4_HYPERSPHERICAL);
    let s4_alt = chart_for(Case::Instanton, S4_HYPERSPHERICAL_ALT);
    let (vol2, vol4) = (volume_form(3), volume_form(5));
    let x0sq = (GradedForm::<Complex64>::x(0) * GradedForm::x(0)).wedge(&vol2);
    let detail2 = format!("order {s2_order}");
    let detail4 = format!("order {s4_order}");
    let mut add = |name: &str, threshold: f64, detail: &str, r: Result<f64>| {
        push(&mut out, name, threshold, r);
        if let Some(c) = out.last_mut() {
            c.detail.get_or_insert_with(|| detail.to_string());
        }
    };
    add(
        "volume.s2",
        1e-9,
        &detail2,
        s2.as_ref().map_err(Clone::clone).and_then(|c| integral_error(&vol2, c, s2_order, 4.0 * PI)),
    );
    add(
        "volume.s2.second_moment",
        1e-8,
        &detail2,
        s2.as_ref().map_err(Clone::clone).and_then(|c| integral_error(&x0sq, c, s2_order, 4.0 * PI / 3.0)),
    );
    add("volume.s2.chart_independence", 1e-8, &detail2, (|| {
        let (a, b) = (s2.clone()?, s2_alt.clone()?);
        Ok((integrate(&x0sq, &a, s2_order)?.value - integrate(&x0sq, &b, s2_order)?.value).abs())
    })());
    add(
        "volume.s4",
        1e-7,
        &detail4,
        s4.as_ref().map_err(Clone::clone).and_then(|c| integral_error(&vol4, c, s4_order, 8.0 * PI * PI / 3.0)),
    );
    add("volume.s4.chart_independence", 1e-7, &detail4, (|| {
        let (a, b) = (s4.clone()?, s4_alt.clone()?);
        Ok((integrate(&vol4, &a, s4_order)?.value - integrate(&vol4, &b, s4_order)?.value).abs())
    })());
    out
}

/// Idempotency, self-adjointness, unit (super)trace, agreement with the
/// coordinate form, and invariance under the fiber action.
pub fn projector_suite(pc: ProjectorCase, seed: u64, n: usize, l: usize) -> Vec<Check> {
    let label = pc.label();
    match projector_identities(pc, seed, n, l) {
        Ok(r) => vec![
            Check::residual(format!("projector.{label}.idempotency"), r.idempotency, 1e-12),
            Check::residual(format!("projector.{label}.self_adjoint"), r.hermiticity, 1e-12),
            Check::residual(format!("projector.{label}.trace"), r.trace, 1e-12),
            Check::residual(format!("projector.{label}.coordinate_form"), r.symbolic_agreement, 1e-12),
            Check::residual(format!("projector.{label}.fiber_invariance"), r.right_action, 1e-12),
        ],
        Err(e) => vec![Check::error(format!("projector.{label}"), 1e-12, &e)],
    }
}

/// Anti-hermiticity of `A = ⟨ψ|dψ⟩` and agreement with its closed form.
pub fn connection_suite(case: Case, seed: u64, n: usize, l: usize) -> Vec<Check> {
    let run = || -> Result<(f64, f64, f64)> {
        let (mut anti, mut closed, mut real) = (0.0f64, 0.0f64, 0.0f64);
        for (t, v) in sample_tangents(case, seed, n, l)? {
            let a = connection_form(&t, &v)?;
            anti = anti.max(anti_hermiticity_residual(&a));
            let b = connection_closed_form(&t, &v)?;
            closed = closed.max(ring_diff(&a, &b));
            if let RingElement::Quaternion(q) = a {
                real = real.max(q.r0.abs());
            }
        }
        Ok((anti, closed, real))
    };
    match run() {
        Ok((anti, closed, real)) => {
            let mut out = vec![
                Check::residual(format!("connection.{case}.anti_hermiticity"), anti, 1e-11)
                    .with_detail(format!("{n} (point, tangent) draws")),
                Check::residual(format!("connection.{case}.closed_form"), closed, 1e-12),
            ];
            if case == Case::Instanton {
                out.push(Check::residual("connection.instanton.real_part", real, 1e-11));
            }
            out
        }
        Err(e) => vec![Check::error(format!("connection.{case}"), 1e-11, &e)],
    }
}

/// The body of the graded `C₁` against `∓(1/4π)(x₀dx₁dx₂ + cyclic)`.
pub fn graded_body_form_check(transposed: bool) -> Check {
    let pc = ProjectorCase::new(Case::Graded, transposed);
    let name = format!("charge.{}.body_form", pc.label());
    match charge_form(pc) {
        Ok(b) => {
            let vol = volume_form(3).scale(pc.expected_charge() / (4.0 * PI));
            Check::residual(name, b.max_abs_diff(&vol), 1e-12)
        }
        Err(e) => Check::error(name, 1e-12, &e),
    }
}
