//! Python bindings: rings, points and projectors, charges and the three
//! report commands.

use num_complex::Complex64;
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hopf::algebra::{GrassmannAlgebra, GrassmannNumber, Quaternion};
use hopf::bundle::charts::{base_charts, chart_for};
use hopf::bundle::{hopf_project, standard_ket, Case, Ket, TotalPoint};
use hopf::forms::{integrate, volume_form};
use hopf::gauge::{self, projector_from_ket, CaseMatrix, ChargeOptions, ProjectorCase};
use hopf::report::{self, ConfigPatch, RunConfig};
use hopf::supermatrix::{random_uosp, GradedMatrix, UospElement};
use hopf::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Lookup(m) => PyKeyError::new_err(m),
        Error::Domain(_) | Error::Usage(_) | Error::Singular(_) => PyValueError::new_err(e.to_string()),
        Error::Numeric(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_case(case: &str) -> PyResult<Case> {
    case.parse().map_err(to_py)
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A real quaternion `r0 + r1 i + r2 j + r3 k`.
#[pyclass(name = "Quaternion", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyQuaternion(Quaternion);

#[pymethods]
impl PyQuaternion {
    #[new]
    #[pyo3(signature = (r0 = 0.0, r1 = 0.0, r2 = 0.0, r3 = 0.0))]
    fn new(r0: f64, r1: f64, r2: f64, r3: f64) -> Self {
        PyQuaternion(Quaternion::new(r0, r1, r2, r3))
    }

    fn components(&self) -> [f64; 4] {
        self.0.components()
    }

    fn conj(&self) -> Self {
        PyQuaternion(self.0.conj())
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// `tr_ℍ`, twice the real part.
    fn trace(&self) -> f64 {
        self.0.trace().re
    }

    fn __add__(&self, o: &Self) -> Self {
        PyQuaternion(self.0 + o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyQuaternion(self.0 - o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyQuaternion(self.0 * o.0)
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.0 == o.0
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.0.components();
        format!("Quaternion({a}, {b}, {c}, {d})")
    }
}

/// Element of the complexified Grassmann algebra.
#[pyclass(name = "Grassmann", frozen, from_py_object)]
#[derive(Clone)]
struct PyGrassmann(GrassmannNumber);

#[pymethods]
impl PyGrassmann {
    #[new]
    #[pyo3(signature = (value = Complex64::new(0.0, 0.0)))]
    fn new(value: Complex64) -> Self {
        PyGrassmann(GrassmannNumber::scalar(value))
    }

    /// The generator `θᵢ`, `i ≥ 1`.
    #[staticmethod]
    fn generator(i: usize) -> PyResult<Self> {
        GrassmannNumber::generator(i).map(PyGrassmann).map_err(to_py)
    }

    /// Coefficients keyed by generator bitmask (bit `i−1` for `θᵢ`).
    fn terms(&self) -> Vec<(u32, Complex64)> {
        self.0.terms().collect()
    }

    fn body(&self) -> Complex64 {
        self.0.body()
    }

    fn involution(&self) -> Self {
        PyGrassmann(self.0.involution())
    }

    /// `"even"`, `"odd"` or `None` for mixed elements.
    fn parity(&self) -> Option<&'static str> {
        self.0.parity().map(|p| if p.is_odd() { "odd" } else { "even" })
    }

    fn __add__(&self, o: &Self) -> Self {
        PyGrassmann(self.0.clone() + o.0.clone())
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyGrassmann(self.0.clone() - o.0.clone())
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyGrassmann(self.0.clone() * o.0.clone())
    }

    fn __neg__(&self) -> Self {
        PyGrassmann(-self.0.clone())
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.0 == o.0
    }

    fn __repr__(&self) -> String {
        format!("Grassmann({})", self.0)
    }
}

/// An element of `UOSP(1,2)`.
#[pyclass(name = "UospElement", frozen)]
struct PyUosp(UospElement);

fn grassmann_rows(m: &GradedMatrix<GrassmannNumber>) -> Vec<Vec<PyGrassmann>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| PyGrassmann(m.get(i, j).clone())).collect()).collect()
}

#[pymethods]
impl PyUosp {
    /// Seeded random element of `UOSP(1,2)` over `C_L`.
    #[staticmethod]
    #[pyo3(signature = (seed = 0, l = 2))]
    fn random(seed: u64, l: usize) -> PyResult<Self> {
        let alg = GrassmannAlgebra::new(l).map_err(to_py)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_uosp(&alg, &mut rng).map(PyUosp).map_err(to_py)
    }

    fn matrix(&self) -> Vec<Vec<PyGrassmann>> {
        grassmann_rows(self.0.matrix())
    }

    fn dagger(&self) -> Vec<Vec<PyGrassmann>> {
        grassmann_rows(&self.0.dagger())
    }

    fn sdet(&self) -> PyResult<PyGrassmann> {
        self.0.sdet().map(PyGrassmann).map_err(to_py)
    }

    /// `max(|s†s − 1|, |ss† − 1|)`.
    fn unitarity_residual(&self) -> f64 {
        self.0.unitarity_residual()
    }
}

fn total_point(case: Case, coords: &[f64]) -> PyResult<TotalPoint> {
    let c = |i: usize| Complex64::new(coords[i], coords[i + 1]);
    let q = |i: usize| Quaternion::new(coords[i], coords[i + 1], coords[i + 2], coords[i + 3]);
    let need = match case {
        Case::Instanton => 8,
        _ => 4,
    };
    if coords.len() != need {
        return Err(PyValueError::new_err(format!("{case} total-space point takes {need} reals, got {}", coords.len())));
    }
    match case {
        Case::Monopole => TotalPoint::monopole(c(0), c(2)),
        Case::Instanton => TotalPoint::instanton(q(0), q(4)),
        Case::Graded => TotalPoint::graded(c(0).into(), c(2).into(), GrassmannNumber::zero()),
    }
    .map_err(to_py)
}

/// Base-sphere coordinates (bodies in the graded case) of `(a, b)` given as
/// 4 reals (monopole, graded with `η = 0`) or 8 reals (instanton).
#[pyfunction]
fn hopf_projection(case: &str, coords: Vec<f64>) -> PyResult<Vec<f64>> {
    let t = total_point(parse_case(case)?, &coords)?;
    Ok(hopf_project(&t).map_err(to_py)?.body())
}

/// `⟨ψ|ψ⟩ − 1` for the standard ket at a total-space point.
#[pyfunction]
fn ket_normalization_residual(case: &str, coords: Vec<f64>) -> PyResult<f64> {
    let t = total_point(parse_case(case)?, &coords)?;
    Ok(standard_ket(&t).normalization_residual())
}

/// The projector at a total-space point: rows of complex numbers, of
/// `Quaternion`s, or of `Grassmann` numbers.
#[pyfunction]
#[pyo3(signature = (case, coords, transposed = false))]
fn projector<'py>(py: Python<'py>, case: &str, coords: Vec<f64>, transposed: bool) -> PyResult<Bound<'py, PyAny>> {
    let case = parse_case(case)?;
    let t = total_point(case, &coords)?;
    let m = projector_from_ket(ProjectorCase::new(case, transposed), &t).map_err(to_py)?;
    let rows = |n: usize| 0..n;
    Ok(match m {
        CaseMatrix::Complex(m) => {
            let v: Vec<Vec<Complex64>> = rows(m.nrows()).map(|i| rows(m.ncols()).map(|j| *m.get(i, j)).collect()).collect();
            v.into_pyobject(py)?.into_any()
        }
        CaseMatrix::Quaternion(m) => {
            let v: Vec<Vec<PyQuaternion>> =
                rows(m.nrows()).map(|i| rows(m.ncols()).map(|j| PyQuaternion(*m.get(i, j))).collect()).collect();
            v.into_pyobject(py)?.into_any()
        }
        CaseMatrix::Grassmann(m) => grassmann_rows(&m).into_pyobject(py)?.into_any(),
    })
}

/// Components of the standard ket: complex numbers, `Quaternion`s or
/// `Grassmann` numbers.
#[pyfunction]
fn ket<'py>(py: Python<'py>, case: &str, coords: Vec<f64>) -> PyResult<Bound<'py, PyAny>> {
    let t = total_point(parse_case(case)?, &coords)?;
    let col = |n: usize| 0..n;
    Ok(match standard_ket(&t) {
        Ket::Complex(k) => col(k.nrows()).map(|i| *k.get(i, 0)).collect::<Vec<_>>().into_pyobject(py)?.into_any(),
        Ket::Quaternion(k) => {
            col(k.nrows()).map(|i| PyQuaternion(*k.get(i, 0))).collect::<Vec<_>>().into_pyobject(py)?.into_any()
        }
        Ket::Grassmann(k) => {
            col(k.nrows()).map(|i| PyGrassmann(k.get(i, 0).clone())).collect::<Vec<_>>().into_pyobject(py)?.into_any()
        }
    })
}

/// Chern number of `p` (or `q`) with its diagnostics, as a dict.
#[pyfunction]
#[pyo3(signature = (case, transposed = false, order = None, seed = 0))]
fn charge<'py>(py: Python<'py>, case: &str, transposed: bool, order: Option<usize>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let case = parse_case(case)?;
    let mut opts = ChargeOptions::new(order.unwrap_or_else(|| gauge::default_order(case)));
    opts.seed = seed;
    let r = py.detach(|| gauge::charge(ProjectorCase::new(case, transposed), &opts)).map_err(to_py)?;
    let text = serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &text)
}

/// `∫ vol` over the base sphere of the case at the given quadrature order.
#[pyfunction]
fn sphere_volume(case: &str, order: usize) -> PyResult<f64> {
    let case = parse_case(case)?;
    let chart = chart_for(case, base_charts(case)[0]).map_err(to_py)?;
    Ok(integrate(&volume_form(case.base_dim() + 1), &chart, order).map_err(to_py)?.value)
}

fn config_from(options: Option<Bound<'_, pyo3::types::PyDict>>) -> PyResult<RunConfig> {
    let mut text = String::new();
    if let Some(d) = options {
        for (k, v) in d.iter() {
            let key: String = k.extract()?;
            let value = match v.extract::<Vec<f64>>() {
                Ok(list) => list.iter().map(f64::to_string).collect::<Vec<_>>().join(" "),
                Err(_) => v.str()?.to_string().to_lowercase(),
            };
            text.push_str(&format!("{key} = {value}\n"));
        }
    }
    let cfg = RunConfig::default().apply(ConfigPatch::parse(&text).map_err(to_py)?);
    cfg.validate().map_err(to_py)?;
    Ok(cfg)
}

fn run_command<'py>(
    py: Python<'py>,
    options: Option<Bound<'py, pyo3::types::PyDict>>,
    cmd: fn(&RunConfig) -> hopf::Result<report::ReportDocument>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = config_from(options)?;
    let doc = py.detach(|| cmd(&cfg)).map_err(to_py)?;
    json_to_py(py, &doc.to_json())
}

/// The `verify` report as a dict; keyword options mirror the CLI flags.
#[pyfunction]
#[pyo3(signature = (**options))]
fn verify<'py>(py: Python<'py>, options: Option<Bound<'py, pyo3::types::PyDict>>) -> PyResult<Bound<'py, PyAny>> {
    run_command(py, options, report::cmd_verify)
}

/// The `gauge` report as a dict.
#[pyfunction]
#[pyo3(signature = (**options))]
fn gauge_transform<'py>(py: Python<'py>, options: Option<Bound<'py, pyo3::types::PyDict>>) -> PyResult<Bound<'py, PyAny>> {
    run_command(py, options, report::cmd_gauge)
}

/// The `selftest` report as a dict.
#[pyfunction]
#[pyo3(signature = (**options))]
fn selftest<'py>(py: Python<'py>, options: Option<Bound<'py, pyo3::types::PyDict>>) -> PyResult<Bound<'py, PyAny>> {
    run_command(py, options, report::cmd_selftest)
}

#[pymodule]
fn hopf_gauge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuaternion>()?;
    m.add_class::<PyGrassmann>()?;
    m.add_class::<PyUosp>()?;
    m.add_function(wrap_pyfunction!(hopf_projection, m)?)?;
    m.add_function(wrap_pyfunction!(ket_normalization_residual, m)?)?;
    m.add_function(wrap_pyfunction!(ket, m)?)?;
    m.add_function(wrap_pyfunction!(projector, m)?)?;
    m.add_function(wrap_pyfunction!(charge, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_volume, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(gauge_transform, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("SCHEMA", report::SCHEMA)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
