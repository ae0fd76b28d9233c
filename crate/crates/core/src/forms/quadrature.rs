//! Gauss–Legendre quadrature on chart boxes and integration of top forms.

use num_complex::Complex64;
use serde::Serialize;

use super::{GradedForm, Monomial, Var};
use crate::bundle::charts::{real_det_flat, Chart};
use crate::error::{domain, Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let step = pn / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Tensor-product rule of the given order over the chart's parameter box,
/// summing `density(u)` in a fixed node order.
pub fn integrate_density(chart: &Chart, order: usize, mut density: impl FnMut(&[f64]) -> Complex64) -> Complex64 {
    let (nodes, weights) = gauss_legendre(order);
    let bounds = chart.bounds();
    let dim = bounds.len();
    let axes: Vec<Vec<(f64, f64)>> = bounds
        .iter()
        .map(|&(lo, hi)| {
            let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            nodes.iter().zip(&weights).map(|(x, w)| (m + h * x, h * w)).collect()
        })
        .collect();
    let mut idx = vec![0usize; dim];
    let mut u = vec![0.0; dim];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let mut w = 1.0;
        for a in 0..dim {
            let (x, wa) = axes[a][idx[a]];
            u[a] = x;
            w *= wa;
        }
        total += density(&u) * w;
        let mut a = dim;
        loop {
            if a == 0 {
                return total;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < order {
                break;
            }
            idx[a] = 0;
        }
    }
}

/// Result of integrating a top form over a chart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    pub imaginary: f64,
    pub chart: String,
    pub order: usize,
    pub nodes: usize,
}

/// Imaginary parts above this (relative to `max(1, |value|)`) are errors.
pub const IMAGINARY_TOL: f64 = 1e-8;

type Piece = (Vec<usize>, Vec<(Vec<(usize, u32)>, Complex64)>);

/// A top form in ambient coordinates, prepared for evaluation of its
/// pullback density `f(x(u)) · det(∂x/∂u)` at chart parameters.
#[derive(Debug, Clone)]
pub struct Pullback<'c> {
    chart: &'c Chart,
    pieces: Vec<Piece>,
    x: Vec<f64>,
    jac: Vec<f64>,
    minor: Vec<f64>,
}

impl<'c> Pullback<'c> {
    pub fn new(f: &GradedForm<Complex64>, chart: &'c Chart) -> Result<Self> {
        let k = chart.dim();
        let ambient = chart.ambient_dim();
        let mut pieces = Vec::new();
        for (diff, poly) in f.by_differential() {
            let mut rows = Vec::new();
            for &(v, p) in diff.factors() {
                match v {
                    Var::DX(i) if (i as usize) < ambient && p == 1 => rows.push(i as usize),
                    _ => return domain(format!("cannot integrate a form containing {v} over {}", chart.name())),
                }
            }
            if rows.len() != k {
                return domain(format!("form of degree {} on a {k}-dimensional chart", rows.len()));
            }
            let mut monos = Vec::new();
            for (m, c) in poly.terms() {
                let mut powers = Vec::new();
                for &(v, p) in m.factors() {
                    match v {
                        Var::X(i) if (i as usize) < ambient => powers.push((i as usize, p)),
                        _ => return domain(format!("cannot integrate a form containing {v} over {}", chart.name())),
                    }
                }
                monos.push((powers, *c));
            }
            pieces.push((rows, monos));
        }
        Ok(Pullback { chart, pieces, x: vec![0.0; ambient], jac: vec![0.0; ambient * k], minor: vec![0.0; k * k] })
    }

    pub fn at(&mut self, u: &[f64]) -> Complex64 {
        let k = self.chart.dim();
        self.chart.fill(u, &mut self.x, Some(&mut self.jac));
        let mut s = Complex64::new(0.0, 0.0);
        for (rows, monos) in &self.pieces {
            for (a, &r) in rows.iter().enumerate() {
                self.minor[a * k..(a + 1) * k].copy_from_slice(&self.jac[r * k..(r + 1) * k]);
            }
            let det = real_det_flat(&mut self.minor, k);
            let x = &self.x;
            let poly: Complex64 = monos
                .iter()
                .map(|(powers, c)| c * powers.iter().map(|&(i, p)| x[i].powi(p as i32)).product::<f64>())
                .sum();
            s += poly * det;
        }
        s
    }
}

/// `∫ f` over the sphere parametrized by `chart`: pullback through the
/// Jacobian minors, then Gauss–Legendre quadrature of the given order.
pub fn integrate(f: &GradedForm<Complex64>, chart: &Chart, order: usize) -> Result<Integral> {
    let k = chart.dim();
    let mut pullback = Pullback::new(f, chart)?;
    let total = integrate_density(chart, order, |u| pullback.at(u));
    if total.im.abs() > IMAGINARY_TOL * total.re.abs().max(1.0) {
        return Err(Error::Numeric(format!("integral over {} has imaginary part {:.3e}", chart.name(), total.im)));
    }
    Ok(Integral { value: total.re, imaginary: total.im, chart: chart.name().to_string(), order, nodes: order.pow(k as u32) })
}

/// `ι_x(dx₀ ∧ … ∧ dxₙ)`, the volume form of the unit sphere in ℝⁿ⁺¹.
pub fn volume_form(ambient: usize) -> GradedForm<Complex64> {
    let mut f = GradedForm::zero();
    for mu in 0..ambient {
        let mut word = vec![Var::X(mu as u8)];
        word.extend((0..ambient).filter(|&j| j != mu).map(|j| Var::DX(j as u8)));
        let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
        f = f + GradedForm::word(Complex64::new(sign, 0.0), &word);
    }
    f
}

/// The monomial `dx_{i₁} ⋯ dx_{iₖ}` in canonical order.
pub fn dx_monomial(indices: &[u8]) -> Monomial {
    Monomial::from_word(&indices.iter().map(|&i| Var::DX(i)).collect::<Vec<_>>()).map(|(_, m)| m).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::charts::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 8, 24, 32] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for deg in 0..2 * n {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg + 1) as f64 };
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!((q - exact).abs() < 1e-12, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn s2_volume_is_four_pi() {
        for name in [S2_SPHERICAL, S2_SPHERICAL_ALT] {
            let r = integrate(&volume_form(3), &Chart::by_name(name).unwrap(), 32).unwrap();
            assert!((r.value - 4.0 * PI).abs() < 1e-9, "{name}: {}", r.value);
        }
    }

    #[test]
    fn s4_volume() {
        let chart = Chart::by_name(S4_HYPERSPHERICAL).unwrap();
        let v24 = integrate(&volume_form(5), &chart, 24).unwrap().value;
        assert!((v24 - 8.0 * PI * PI / 3.0).abs() < 1e-7);
        let v48 = integrate(&volume_form(5), &chart, 48).unwrap().value;
        assert!((v48 - v24).abs() < 1e-9);
    }

    #[test]
    fn x0_squared_over_s2() {
        let f = GradedForm::x(0).wedge(&GradedForm::x(0)).wedge(&volume_form(3));
        for name in [S2_SPHERICAL, S2_SPHERICAL_ALT] {
            let r = integrate(&f, &Chart::by_name(name).unwrap(), 32).unwrap();
            assert!((r.value - 4.0 * PI / 3.0).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_wrong_degree_and_odd_variables() {
        let chart = Chart::by_name(S2_SPHERICAL).unwrap();
        assert!(integrate(&volume_form(5), &chart, 8).is_err());
        let odd = GradedForm::word(Complex64::new(1.0, 0.0), &[Var::Xi(0), Var::DX(0), Var::DX(1)]);
        assert!(integrate(&odd, &chart, 8).is_err());
        let imag = volume_form(3).scale(1.0).map_coeffs(|c| c * Complex64::new(0.0, 1.0));
        assert!(matches!(integrate(&imag, &chart, 8), Err(Error::Numeric(_))));
    }
}
