//! Parametrizations of spheres used for pullback and quadrature, plus
//! uniform samplers.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use super::Case;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Factor {
    One,
    Sin,
    Cos,
}

impl Factor {
    fn eval(self, (s, c): (f64, f64)) -> f64 {
        match self {
            Factor::One => 1.0,
            Factor::Sin => s,
            Factor::Cos => c,
        }
    }

    fn deriv(self, (s, c): (f64, f64)) -> f64 {
        match self {
            Factor::One => 0.0,
            Factor::Sin => c,
            Factor::Cos => -s,
        }
    }
}



/// Hyperspherical coordinates of `Sⁿ ⊂ ℝⁿ⁺¹`: row `k` lists the factor
/// applied to each angle, `x_k = sin u₁ ⋯ sin u_k cos u_{k+1}`.
fn hyperspherical_table(n: usize) -> Vec<Vec<Factor>> {
    (0..=n)
        .map(|k| {
            (0..n)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => Factor::Sin,
                    std::cmp::Ordering::Equal => Factor::Cos,
                    std::cmp::Ordering::Greater => Factor::One,
                })
                .collect()
        })
        .collect()
}

fn product_eval(row: &[Factor], u: &[(f64, f64)]) -> f64 {
    row.iter().zip(u).map(|(f, &t)| f.eval(t)).product()
}

fn product_deriv(row: &[Factor], u: &[(f64, f64)], j: usize) -> f64 {
    if row[j] == Factor::One {
        return 0.0;
    }
    let mut p = row[j].deriv(u[j]);
    for (i, (f, &t)) in row.iter().zip(u).enumerate() {
        if i != j && *f != Factor::One {
            p *= f.eval(t);
        }
    }
    p
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    /// `Sⁿ` with the polar axis at `axes[0]`, then `axes[1]`, ...
    Sphere { n: usize, axes: Vec<usize> },
    /// `(a, b) = (cos(t/2) u, sin(t/2) v)` with `u, v` on `Sᵐ`.
    HopfPair { m: usize },
}

/// A parametrization of a sphere by a box of angles.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    name: String,
    kind: Kind,
    bounds: Vec<(f64, f64)>,
    table: Vec<Vec<Factor>>,
}

pub const S2_SPHERICAL: &str = "s2-spherical";
pub const S2_SPHERICAL_ALT: &str = "s2-spherical-polar-x2";
pub const S4_HYPERSPHERICAL: &str = "s4-hyperspherical";
pub const S4_HYPERSPHERICAL_ALT: &str = "s4-hyperspherical-polar-x4";
pub const S3_HOPF: &str = "s3-hopf";
pub const S7_HOPF: &str = "s7-hopf";

fn sphere_bounds(n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|i| if i + 1 == n { (0.0, 2.0 * PI) } else { (0.0, PI) }).collect()
}

impl Chart {
    fn sphere(name: &str, n: usize, axes: Vec<usize>) -> Self {
        Chart { name: name.to_string(), kind: Kind::Sphere { n, axes }, bounds: sphere_bounds(n), table: hyperspherical_table(n) }
    }

    fn hopf(name: &str, m: usize) -> Self {
        let mut bounds = vec![(0.0, PI)];
        bounds.extend(sphere_bounds(m));
        bounds.extend(sphere_bounds(m));
        Chart { name: name.to_string(), kind: Kind::HopfPair { m }, bounds, table: hyperspherical_table(m) }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(match name {
            S2_SPHERICAL => Chart::sphere(name, 2, vec![0, 1, 2]),
            S2_SPHERICAL_ALT => Chart::sphere(name, 2, vec![2, 0, 1]),
            S4_HYPERSPHERICAL => Chart::sphere(name, 4, vec![0, 1, 2, 3, 4]),
            S4_HYPERSPHERICAL_ALT => Chart::sphere(name, 4, vec![4, 0, 1, 2, 3]),
            S3_HOPF => Chart::hopf(name, 1),
            S7_HOPF => Chart::hopf(name, 3),
            other => return Err(Error::Lookup(format!("unknown chart `{other}`"))),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of parameters.
    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    /// Number of real ambient coordinates.
    pub fn ambient_dim(&self) -> usize {
        match &self.kind {
            Kind::Sphere { n, .. } => n + 1,
            Kind::HopfPair { m } => 2 * (m + 1),
        }
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn is_total_space(&self) -> bool {
        matches!(self.kind, Kind::HopfPair { .. })
    }

    pub fn point(&self, u: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.ambient_dim()];
        self.fill(u, &mut x, None);
        x
    }

    /// `J[i][j] = ∂xᵢ/∂uⱼ`.
    pub fn jacobian(&self, u: &[f64]) -> Vec<Vec<f64>> {
        let (n, d) = (self.ambient_dim(), self.dim());
        let mut x = vec![0.0; n];
        let mut flat = vec![0.0; n * d];
        self.fill(u, &mut x, Some(&mut flat));
        flat.chunks(d).map(<[f64]>::to_vec).collect()
    }

    /// Writes the point and, if requested, the row-major Jacobian.
    pub fn fill(&self, u: &[f64], x: &mut [f64], mut jac: Option<&mut [f64]>) {
        assert_eq!(u.len(), self.dim(), "chart {} takes {} parameters", self.name, self.dim());
        let mut sc = [(0.0, 1.0); 8];
        for (t, v) in sc.iter_mut().zip(u) {
            *t = v.sin_cos();
        }
        let d = self.dim();
        let table = &self.table;
        match &self.kind {
            Kind::Sphere { n, axes } => {
                let sc = &sc[..*n];
                for (k, row) in table.iter().enumerate() {
                    x[axes[k]] = product_eval(row, sc);
                    if let Some(jac) = jac.as_deref_mut() {
                        for j in 0..*n {
                            jac[axes[k] * d + j] = product_deriv(row, sc, j);
                        }
                    }
                }
            }
            Kind::HopfPair { m } => {
                let m = *m;
                let (s, c) = half_angle(sc[0]);
                let (uu, vv) = (&sc[1..=m], &sc[m + 1..2 * m + 1]);
                if let Some(jac) = jac.as_deref_mut() {
                    jac.iter_mut().for_each(|v| *v = 0.0);
                }
                for (k, row) in table.iter().enumerate() {
                    let (pu, pv) = (product_eval(row, uu), product_eval(row, vv));
                    x[k] = c * pu;
                    x[m + 1 + k] = s * pv;
                    if let Some(jac) = jac.as_deref_mut() {
                        jac[k * d] = -0.5 * s * pu;
                        jac[(m + 1 + k) * d] = 0.5 * c * pv;
                        for j in 0..m {
                            jac[k * d + 1 + j] = c * product_deriv(row, uu, j);
                            jac[(m + 1 + k) * d + 1 + m + j] = s * product_deriv(row, vv, j);
                        }
                    }
                }
            }
        }
    }

    /// Center of the parameter box.
    pub fn center(&self) -> Vec<f64> {
        self.bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect()
    }

    /// Uniform random parameters strictly inside the box.
    pub fn random_parameters<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.bounds
            .iter()
            .map(|&(lo, hi)| {
                let margin = 1e-3 * (hi - lo);
                rng.random_range(lo + margin..hi - margin)
            })
            .collect()
    }

    /// Sign of `det[x, ∂x/∂u₁, …]` for sphere charts; `+1` means the chart
    /// agrees with the outward orientation used for `vol`.
    pub fn orientation(&self, u: &[f64]) -> f64 {
        let x = self.point(u);
        let jac = self.jacobian(u);
        let n = x.len();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][0] = x[i];
            for j in 0..n - 1 {
                m[i][j + 1] = jac[i][j];
            }
        }
        real_det(m).signum()
    }
}

/// `(sin(t/2), cos(t/2))` from `(sin t, cos t)` with `t ∈ [0, π]`.
fn half_angle((_, c): (f64, f64)) -> (f64, f64) {
    (((1.0 - c) * 0.5).max(0.0).sqrt(), ((1.0 + c) * 0.5).max(0.0).sqrt())
}

/// Determinant of a row-major `n×n` matrix, overwriting it.
pub fn real_det_flat(m: &mut [f64], n: usize) -> f64 {
    match n {
        0 => return 1.0,
        1 => return m[0],
        2 => return m[0] * m[3] - m[1] * m[2],
        3 => return det3(m, [0, 1, 2], [0, 1, 2], 3),
        4 => {
            return m[0] * det3(m, [1, 2, 3], [1, 2, 3], 4) - m[1] * det3(m, [1, 2, 3], [0, 2, 3], 4)
                + m[2] * det3(m, [1, 2, 3], [0, 1, 3], 4)
                - m[3] * det3(m, [1, 2, 3], [0, 1, 2], 4)
        }
        _ => {}
    }
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i * n + c].abs().total_cmp(&m[j * n + c].abs())).unwrap_or(c);
        if m[p * n + c] == 0.0 {
            return 0.0;
        }
        if p != c {
            for k in 0..n {
                m.swap(p * n + k, c * n + k);
            }
            det = -det;
        }
        let pivot = m[c * n + c];
        det *= pivot;
        for r in c + 1..n {
            let f = m[r * n + c] / pivot;
            if f != 0.0 {
                for k in c..n {
                    m[r * n + k] -= f * m[c * n + k];
                }
            }
        }
    }
    det
}

fn det3(m: &[f64], r: [usize; 3], c: [usize; 3], n: usize) -> f64 {
    let e = |i: usize, j: usize| m[r[i] * n + c[j]];
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

/// Determinant by partial-pivot elimination.
pub fn real_det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap_or(c);
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            if f != 0.0 {
                for k in c..n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    det
}

/// Base chart names valid for a case: the default first, then the alternate.
pub fn base_charts(case: Case) -> [&'static str; 2] {
    match case {
        Case::Monopole | Case::Graded => [S2_SPHERICAL, S2_SPHERICAL_ALT],
        Case::Instanton => [S4_HYPERSPHERICAL, S4_HYPERSPHERICAL_ALT],
    }
}

pub fn total_chart(case: Case) -> &'static str {
    match case {
        Case::Monopole | Case::Graded => S3_HOPF,
        Case::Instanton => S7_HOPF,
    }
}

/// Looks up a chart and checks that it belongs to the case.
pub fn chart_for(case: Case, name: &str) -> Result<Chart> {
    let chart = Chart::by_name(name)?;
    let ok = base_charts(case).contains(&name) || total_chart(case) == name;
    if !ok {
        return Err(Error::Lookup(format!("chart `{name}` does not belong to the {case} case")));
    }
    Ok(chart)
}

/// Uniform point on `Sⁿ⁻¹ ⊂ ℝⁿ` by normalizing a Gaussian vector.
pub fn uniform_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}
