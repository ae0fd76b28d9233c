//! Unitary and general linear transformations of the projector, its ket
//! and its connection.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::connection::{braket, connection_form, ket_differential, Tangent};
use super::pointwise::{pointwise_charge, transform_jet};
use crate::algebra::{GrassmannAlgebra, GrassmannNumber, Parity, Quaternion, RingElement, Scalar};
use crate::bundle::charts::{base_charts, chart_for, uniform_sphere, Chart};
use crate::bundle::sections::{CaseRing, KetJet};
use crate::bundle::{standard_ket, Case, Ket, TotalPoint};
use crate::error::{domain, Error, Result};
use crate::supermatrix::{random_uosp, uosp_closed_form, uosp_element, GradedMatrix};

/// Unitarity tolerance for [`su_transform`].
pub const UNITARY_TOL: f64 = 1e-10;

/// A matrix over the case's ring.
#[derive(Debug, Clone, PartialEq)]
pub enum CaseMatrix {
    Complex(GradedMatrix<Complex64>),
    Grassmann(GradedMatrix<GrassmannNumber>),
    Quaternion(GradedMatrix<Quaternion>),
}

macro_rules! dispatch {
    ($m:expr, $x:ident => $body:expr) => {
        match $m {
            CaseMatrix::Complex($x) => $body,
            CaseMatrix::Grassmann($x) => $body,
            CaseMatrix::Quaternion($x) => $body,
        }
    };
}

fn unitarity<R: Scalar>(g: &GradedMatrix<R>) -> f64 {
    let one = GradedMatrix::identity(g.row_parities().to_vec());
    let d = g.super_dagger();
    match (g.matmul(&d), d.matmul(g)) {
        (Ok(a), Ok(b)) => a.max_abs_diff(&one).max(b.max_abs_diff(&one)),
        _ => f64::INFINITY,
    }
}

impl CaseMatrix {
    pub fn case(&self) -> Case {
        match self {
            CaseMatrix::Complex(_) => Case::Monopole,
            CaseMatrix::Grassmann(_) => Case::Graded,
            CaseMatrix::Quaternion(_) => Case::Instanton,
        }
    }

    pub fn identity(case: Case) -> Self {
        let sig = case.signature();
        match case {
            Case::Monopole => CaseMatrix::Complex(GradedMatrix::identity(sig)),
            Case::Graded => CaseMatrix::Grassmann(GradedMatrix::identity(sig)),
            Case::Instanton => CaseMatrix::Quaternion(GradedMatrix::identity(sig)),
        }
    }

    /// `max(|gg† − 1|, |g†g − 1|)`.
    pub fn unitarity_residual(&self) -> f64 {
        dispatch!(self, g => unitarity(g))
    }

    pub fn max_abs_diff(&self, other: &CaseMatrix) -> f64 {
        match (self, other) {
            (CaseMatrix::Complex(a), CaseMatrix::Complex(b)) => a.max_abs_diff(b),
            (CaseMatrix::Grassmann(a), CaseMatrix::Grassmann(b)) => a.max_abs_diff(b),
            (CaseMatrix::Quaternion(a), CaseMatrix::Quaternion(b)) => a.max_abs_diff(b),
            _ => f64::INFINITY,
        }
    }

    /// Real components of all entries in row-major order (complex: re, im;
    /// quaternion: r₀..r₃; Grassmann: body re, im).
    pub fn flat_body(&self) -> Vec<f64> {
        match self {
            CaseMatrix::Complex(m) => m.entries().iter().flat_map(|z| [z.re, z.im]).collect(),
            CaseMatrix::Grassmann(m) => m.entries().iter().flat_map(|z| [z.body().re, z.body().im]).collect(),
            CaseMatrix::Quaternion(m) => m.entries().iter().flat_map(Quaternion::components).collect(),
        }
    }
}

/// A group element acting on kets from the left.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeElement {
    matrix: CaseMatrix,
}

impl GaugeElement {
    pub fn new(matrix: CaseMatrix) -> Result<Self> {
        let n = matrix.case().signature().len();
        let shape = dispatch!(&matrix, g => (g.nrows(), g.ncols(), g.row_parities() == g.col_parities()));
        if shape != (n, n, true) {
            return domain(format!("{} gauge element must be {n}×{n}", matrix.case()));
        }
        if let CaseMatrix::Grassmann(g) = &matrix {
            if !g.is_homogeneous() {
                return domain("graded gauge element must be an even supermatrix");
            }
        }
        Ok(GaugeElement { matrix })
    }

    pub fn identity(case: Case) -> Self {
        GaugeElement { matrix: CaseMatrix::identity(case) }
    }

    pub fn case(&self) -> Case {
        self.matrix.case()
    }

    pub fn matrix(&self) -> &CaseMatrix {
        &self.matrix
    }

    pub fn is_unitary(&self) -> bool {
        self.matrix.unitarity_residual() <= UNITARY_TOL
    }

    /// `g = diag(d₀, d₁)` over ℂ.
    pub fn complex_diagonal(d0: Complex64, d1: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        GaugeElement { matrix: CaseMatrix::Complex(GradedMatrix::from_rows(vec![vec![d0, z], vec![z, d1]]).expect("2x2")) }
    }
}

/// Seed-reproducible random element of `SU(2)`, `UOSP(1,2)` or `Sp(2)`.
pub fn random_unitary<R: Rng + ?Sized>(case: Case, rng: &mut R, alg: &GrassmannAlgebra) -> GaugeElement {
    let unit_q = |rng: &mut R| {
        let v = uniform_sphere(rng, 4);
        Quaternion::new(v[0], v[1], v[2], v[3])
    };
    let matrix = match case {
        Case::Monopole => {
            let m = unit_q(rng).su2_matrix();
            CaseMatrix::Complex(GradedMatrix::from_rows(vec![m[0].to_vec(), m[1].to_vec()]).expect("2x2"))
        }
        Case::Graded => CaseMatrix::Grassmann(random_uosp(alg, rng).expect("random UOSP(1,2)").matrix().clone()),
        Case::Instanton => {
            let (u0, u1, u2, u3, w) = (unit_q(rng), unit_q(rng), unit_q(rng), unit_q(rng), unit_q(rng));
            let (s, c) = rng.random_range(0.0..std::f64::consts::PI).sin_cos();
            let z = Quaternion::real(0.0);
            let d = |x, y| GradedMatrix::from_rows(vec![vec![x, z], vec![z, y]]).expect("2x2");
            let r = GradedMatrix::from_rows(vec![
                vec![Quaternion::real(c), w.conj() * (-s)],
                vec![w * s, Quaternion::real(c)],
            ])
            .expect("2x2");
            CaseMatrix::Quaternion(d(u0, u1).matmul(&r).and_then(|m| m.matmul(&d(u2, u3))).expect("2x2"))
        }
    };
    GaugeElement { matrix }
}

/// Graded gauge element from `(a, b, η)` given as 8 reals: `a`, `b` complex
/// bodies and `η = (η₁ + iη₂)θ₁ + (η₃ + iη₄)θ₂`. Normalized parameters give
/// the `UOSP(1,2)` element; otherwise the same closed form lies in `GL(1,2)`.
pub fn graded_element(params: &[f64; 8], alg: &GrassmannAlgebra) -> Result<GaugeElement> {
    let a = GrassmannNumber::scalar(Complex64::new(params[0], params[1]));
    let b = GrassmannNumber::scalar(Complex64::new(params[2], params[3]));
    let eta = alg.generator(1)?.scale_complex(Complex64::new(params[4], params[5]))
        + alg.generator(2)?.scale_complex(Complex64::new(params[6], params[7]));
    let norm = params[..4].iter().map(|x| x * x).sum::<f64>();
    let m = if (norm - 1.0).abs() <= 1e-12 {
        uosp_element(a, b, eta)?.matrix().clone()
    } else {
        uosp_closed_form(&a, &b, &eta)
    };
    GaugeElement::new(CaseMatrix::Grassmann(m))
}

/// `[[λ^{1/2}, c λ^{−1/2}], [0, λ^{−1/2}]]`, a dilation by `λ` composed with
/// a translation by `c ∈ ℍ`, representing a coset of `SL(2,ℍ)/Sp(2)`.
pub fn instanton_family(params: [f64; 5]) -> Result<GaugeElement> {
    let lambda = params[0];
    if !(lambda > 0.0) || params.iter().any(|p| !p.is_finite()) {
        return domain(format!("conformal family needs a finite scale λ > 0, got {lambda}"));
    }
    let r = lambda.sqrt();
    let c = Quaternion::new(params[1], params[2], params[3], params[4]);
    let m = GradedMatrix::from_rows(vec![
        vec![Quaternion::real(r), c * (1.0 / r)],
        vec![Quaternion::real(0.0), Quaternion::real(1.0 / r)],
    ])?;
    Ok(GaugeElement { matrix: CaseMatrix::Quaternion(m) })
}

/// Real dimensions behind the size of the instanton family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub sl2h: usize,
    pub sp2: usize,
    pub family: usize,
}

fn real_rank(mut rows: Vec<Vec<f64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&i, &j| rows[i][c].abs().total_cmp(&rows[j][c].abs())) else { break };
        if rows[p][c].abs() < 1e-12 {
            continue;
        }
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank {
                let f = rows[i][c] / rows[rank][c];
                for k in c..cols {
                    rows[i][k] -= f * rows[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim sl(2,ℍ)` and `dim sp(2)` as kernels of linear maps on `M₂(ℍ) ≅ ℝ¹⁶`.
pub fn dimension_check() -> DimensionCheck {
    let basis: Vec<GradedMatrix<Quaternion>> = (0..16)
        .map(|k| {
            let mut c = [0.0; 4];
            c[k % 4] = 1.0;
            let mut m = GradedMatrix::zeros(vec![Parity::Even; 2], vec![Parity::Even; 2]);
            m.set(k / 8, (k / 4) % 2, Quaternion::from_components(c));
            m
        })
        .collect();
    let flat = |m: &GradedMatrix<Quaternion>| m.entries().iter().flat_map(Quaternion::components).collect::<Vec<_>>();
    let transpose = |rows: Vec<Vec<f64>>| (0..rows[0].len()).map(|i| rows.iter().map(|r| r[i]).collect()).collect();
    let herm = basis.iter().map(|x| flat(&(x + &x.super_dagger()))).collect();
    let trace = basis.iter().map(|x| vec![x.trace().expect("square").r0]).collect();
    let sp2 = 16 - real_rank(transpose(herm));
    let sl2h = 16 - real_rank(transpose(trace));
    DimensionCheck { sl2h, sp2, family: sl2h - sp2 }
}

/// Whether the transformation was checked as unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Unitary,
    General,
}

/// Residuals of a gauge transformation over sampled points and tangents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub case: Case,
    pub kind: TransformKind,
    pub samples: usize,
    pub unitarity_residual: f64,
    /// `|⟨ψᵍ|ψᵍ⟩ − 1|`.
    pub normalization_residual: f64,
    /// `|ψᵍψᵍ† − gpg†/N|`.
    pub projector_residual: f64,
    /// `max(|vv† − pᵍ|, |v†v − p|)` for `v = gp/N^{1/2}`.
    pub partial_isometry_residual: f64,
    /// Unitary: `|Aˢ − A|`. General: `|Aᵍ − (1/2N)(⟨ψ|g†g|dψ⟩ − ⟨dψ|g†g|ψ⟩)|`.
    pub connection_residual: f64,
    /// `|Aᵍ − A|`; nonzero values separate the transformed connection from the original.
    pub connection_difference: f64,
    pub anti_hermiticity_residual: f64,
    pub charge: Option<f64>,
    pub reference_charge: Option<f64>,
}

struct Residuals {
    normalization: f64,
    projector: f64,
    isometry: f64,
    tracon: f64,
    difference: f64,
    anti_hermiticity: f64,
}

fn residuals_at<R: CaseRing>(g: &GradedMatrix<R>, psi: &GradedMatrix<R>, dpsi: &GradedMatrix<R>) -> Result<Residuals> {
    let jet = transform_jet(g, &KetJet { value: psi.clone(), partials: vec![dpsi.clone()] })?;
    let (pg_ket, dpg) = (&jet.value, &jet.partials[0]);
    let gg = g.super_dagger().matmul(g)?;
    let n = psi.super_dagger().matmul(&gg)?.matmul(psi)?.get(0, 0).clone();
    let n_inv = n.inverse()?;
    let p = psi.matmul(&psi.super_dagger())?;
    let pg = g.matmul(&p)?.matmul(&g.super_dagger())?.right_scale(&n_inv);
    let v = g.matmul(&p)?.right_scale(&n.sqrt_positive()?.inverse()?);
    let vd = v.super_dagger();
    let one = R::one();
    let ag = pg_ket.super_dagger().matmul(dpg)?.get(0, 0).clone();
    let a = psi.super_dagger().matmul(dpsi)?.get(0, 0).clone();
    let lhs = psi.super_dagger().matmul(&gg)?.matmul(dpsi)?.get(0, 0).clone();
    let rhs = dpsi.super_dagger().matmul(&gg)?.matmul(psi)?.get(0, 0).clone();
    let tracon = (lhs - rhs) * n_inv.scale(0.5);
    Ok(Residuals {
        normalization: (pg_ket.super_dagger().matmul(pg_ket)?.get(0, 0).clone() - one).max_abs(),
        projector: pg_ket.matmul(&pg_ket.super_dagger())?.max_abs_diff(&pg),
        isometry: v.matmul(&vd)?.max_abs_diff(&pg).max(vd.matmul(&v)?.max_abs_diff(&p)),
        tracon: (ag.clone() - tracon).max_abs(),
        difference: (ag.clone() - a).max_abs(),
        anti_hermiticity: (ag.clone() + ag.conj()).max_abs(),
    })
}

fn sweep<R: CaseRing>(g: &GradedMatrix<R>, draws: &[(TotalPoint, Tangent)]) -> Result<Residuals> {
    let mut acc = Residuals { normalization: 0.0, projector: 0.0, isometry: 0.0, tracon: 0.0, difference: 0.0, anti_hermiticity: 0.0 };
    for (t, v) in draws {
        let psi = standard_ket(t);
        let dpsi = ket_differential(t, v)?;
        let (Some(psi), Some(dpsi)) = (R::unwrap(&psi), R::unwrap(&dpsi)) else {
            return domain(format!("{} gauge element applied to a {} point", R::CASE, t.case()));
        };
        let r = residuals_at(g, psi, dpsi)?;
        acc.normalization = acc.normalization.max(r.normalization);
        acc.projector = acc.projector.max(r.projector);
        acc.isometry = acc.isometry.max(r.isometry);
        acc.tracon = acc.tracon.max(r.tracon);
        acc.difference = acc.difference.max(r.difference);
        acc.anti_hermiticity = acc.anti_hermiticity.max(r.anti_hermiticity);
    }
    Ok(acc)
}

fn transform(g: &GaugeElement, draws: &[(TotalPoint, Tangent)], kind: TransformKind, order: Option<usize>) -> Result<OrbitReport> {
    let r = dispatch!(&g.matrix, m => sweep(m, draws))?;
    let (charge, reference_charge) = match order {
        Some(order) => {
            let chart = chart_for(g.case(), base_charts(g.case())[0])?;
            let (c, c0) = dispatch!(&g.matrix, m => charge_pair(&chart, order, m))?;
            (Some(c), Some(c0))
        }
        None => (None, None),
    };
    Ok(OrbitReport {
        case: g.case(),
        kind,
        samples: draws.len(),
        unitarity_residual: g.matrix.unitarity_residual(),
        normalization_residual: r.normalization,
        projector_residual: r.projector,
        partial_isometry_residual: r.isometry,
        connection_residual: if kind == TransformKind::Unitary { r.difference } else { r.tracon },
        connection_difference: r.difference,
        anti_hermiticity_residual: r.anti_hermiticity,
        charge,
        reference_charge,
    })
}

fn charge_pair<R: CaseRing>(chart: &Chart, order: usize, g: &GradedMatrix<R>) -> Result<(f64, f64)> {
    Ok((charge_of(chart, order, Some(g))?, charge_of::<R>(chart, order, None)?))
}

fn charge_of<R: CaseRing>(chart: &Chart, order: usize, g: Option<&GradedMatrix<R>>) -> Result<f64> {
    let v = pointwise_charge(chart, order, false, g)?;
    if v.im.abs() > 1e-8 {
        return Err(Error::Numeric(format!("transformed charge has imaginary part {:.3e}", v.im)));
    }
    Ok(v.re)
}

/// Applies a unitary `s`: `pˢ = sps†`, `v = sp`, and `Aˢ = A`.
pub fn su_transform(s: &GaugeElement, draws: &[(TotalPoint, Tangent)], order: Option<usize>) -> Result<OrbitReport> {
    let r = s.matrix.unitarity_residual();
    if !(r <= UNITARY_TOL) {
        return domain(format!("gauge element is not unitary (residual {r:.3e})"));
    }
    transform(s, draws, TransformKind::Unitary, order)
}

/// Applies a general `g`: `|ψᵍ⟩ = g|ψ⟩/⟨ψ|g†g|ψ⟩^{1/2}` and its projector
/// and connection, with the charge of `pᵍ` when an order is given.
pub fn gl_transform(g: &GaugeElement, draws: &[(TotalPoint, Tangent)], order: Option<usize>) -> Result<OrbitReport> {
    transform(g, draws, TransformKind::General, order)
}

/// `n` seeded random unitary elements.
pub fn sample_unitaries(case: Case, seed: u64, n: usize, l: usize) -> Result<Vec<GaugeElement>> {
    let alg = GrassmannAlgebra::new(l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| random_unitary(case, &mut rng, &alg)).collect())
}

/// The transformed ket `g|ψ⟩/⟨ψ|g†g|ψ⟩^{1/2}` at a total-space point.
pub fn transformed_ket(g: &GaugeElement, t: &TotalPoint) -> Result<Ket> {
    fn go<R: CaseRing>(g: &GradedMatrix<R>, t: &TotalPoint) -> Result<Ket> {
        let psi = standard_ket(t);
        let Some(psi) = R::unwrap(&psi) else {
            return domain(format!("{} gauge element applied to a {} point", R::CASE, t.case()));
        };
        Ok(R::wrap(transform_jet(g, &KetJet { value: psi.clone(), partials: vec![] })?.value))
    }
    dispatch!(&g.matrix, m => go(m, t))
}

/// `Aᵍ(t)[v] = ⟨ψᵍ|dψᵍ⟩`.
pub fn transformed_connection(g: &GaugeElement, t: &TotalPoint, v: &Tangent) -> Result<RingElement> {
    fn go<R: CaseRing>(g: &GradedMatrix<R>, t: &TotalPoint, v: &Tangent) -> Result<RingElement> {
        let (psi, dpsi) = (standard_ket(t), ket_differential(t, v)?);
        let (Some(psi), Some(dpsi)) = (R::unwrap(&psi), R::unwrap(&dpsi)) else {
            return domain(format!("{} gauge element applied to a {} point", R::CASE, t.case()));
        };
        let jet = transform_jet(g, &KetJet { value: psi.clone(), partials: vec![dpsi.clone()] })?;
        braket(&R::wrap(jet.value), &R::wrap(jet.partials[0].clone()))
    }
    if g.matrix.case() == t.case() && g.matrix == CaseMatrix::identity(t.case()) {
        return connection_form(t, v);
    }
    dispatch!(&g.matrix, m => go(m, t, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::connection::sample_tangents;

    #[test]
    fn identity_has_zero_residuals() {
        for case in Case::ALL {
            let draws = sample_tangents(case, 1, 20, 2).unwrap();
            let r = su_transform(&GaugeElement::identity(case), &draws, None).unwrap();
            assert!(r.connection_residual < 1e-15);
            assert!(r.partial_isometry_residual < 1e-14 && r.unitarity_residual == 0.0);
        }
    }

    #[test]
    fn random_unitaries_leave_connection_invariant() {
        for case in Case::ALL {
            let draws = sample_tangents(case, 2, 20, 4).unwrap();
            for s in sample_unitaries(case, 3, 50, 4).unwrap() {
                let r = su_transform(&s, &draws, None).unwrap();
                assert!(r.connection_residual < 1e-11, "{case}: {r:?}");
                assert!(r.partial_isometry_residual < 1e-11 && r.normalization_residual < 1e-12, "{case}: {r:?}");
            }
        }
    }

    #[test]
    fn non_unitary_rejected_by_su_transform() {
        let g = GaugeElement::complex_diagonal(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0));
        let draws = sample_tangents(Case::Monopole, 4, 3, 2).unwrap();
        assert!(matches!(su_transform(&g, &draws, None), Err(Error::Domain(_))));
    }

    #[test]
    fn diagonal_gl_transform_keeps_charge() {
        let g = GaugeElement::complex_diagonal(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0));
        let draws = sample_tangents(Case::Monopole, 5, 50, 2).unwrap();
        let r = gl_transform(&g, &draws, Some(32)).unwrap();
        assert!((r.charge.unwrap() + 1.0).abs() < 1e-6, "{r:?}");
        assert!(r.connection_residual < 1e-12 && r.partial_isometry_residual < 1e-12);
        assert!(r.connection_difference > 1e-3);
    }

    #[test]
    fn unitary_gl_matches_su() {
        let draws = sample_tangents(Case::Instanton, 6, 30, 2).unwrap();
        let s = &sample_unitaries(Case::Instanton, 7, 1, 2).unwrap()[0];
        let a = su_transform(s, &draws, None).unwrap();
        let b = gl_transform(s, &draws, None).unwrap();
        assert!(a.connection_residual < 1e-12 && b.connection_difference < 1e-12);
    }

    #[test]
    fn graded_general_element() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let g = graded_element(&[1.2, 0.3, -0.4, 0.1, 0.5, 0.0, 0.0, -0.7], &alg).unwrap();
        assert!(!g.is_unitary());
        let draws = sample_tangents(Case::Graded, 8, 30, 2).unwrap();
        let r = gl_transform(&g, &draws, Some(24)).unwrap();
        assert!(r.connection_residual < 1e-12 && r.partial_isometry_residual < 1e-12, "{r:?}");
        assert!((r.charge.unwrap() + 1.0).abs() < 1e-6, "{r:?}");
        let s = graded_element(&[0.6, 0.0, 0.0, 0.8, 0.5, 0.0, 0.0, -0.7], &alg).unwrap();
        assert!(s.is_unitary());
    }

    #[test]
    fn family_identity_and_scale() {
        let id = instanton_family([1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(id, GaugeElement::identity(Case::Instanton));
        assert!(instanton_family([0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
        assert!(instanton_family([-1.0, 0.0, 0.0, 0.0, 0.0]).is_err());
        let g = instanton_family([2.0, 0.3, 0.0, -0.2, 0.1]).unwrap();
        let draws = sample_tangents(Case::Instanton, 9, 30, 2).unwrap();
        let r = gl_transform(&g, &draws, None).unwrap();
        assert!(r.connection_residual < 1e-12 && r.partial_isometry_residual < 1e-12, "{r:?}");
        assert!(r.connection_difference > 1e-3);
    }

    #[test]
    fn dimension_count() {
        assert_eq!(dimension_check(), DimensionCheck { sl2h: 15, sp2: 10, family: 5 });
    }

    #[test]
    fn transformed_ket_is_normalized() {
        let g = instanton_family([3.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        for t in crate::bundle::sample(Case::Instanton, 10, 20) {
            assert!(transformed_ket(&g, &t).unwrap().normalization_residual() < 1e-13);
        }
    }
}
