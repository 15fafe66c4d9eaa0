//! Python bindings: potential configurations, band energies, bound states,
//! eigenfunctions, pencil sweeps, point limits and the verification suite.

use pseudospin_core::bands::{classify_flat, dispersion_bands, panel_class};
use pseudospin_core::boundstates::{self, BoundStateSolution, Normalization};
use pseudospin_core::model::{self, Geometry};
use pseudospin_core::oracle;
use pseudospin_core::pointlimits::{self, PointSpec, SqueezeFamily, SqueezeLaw};
use pseudospin_core::spectra::{self, PencilSpec, Vertex};
use pseudospin_core::verify::{self, VerifyOptions};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: pseudospin_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_vertex(s: &str) -> Result<Vertex, String> {
    match s.to_ascii_uppercase().as_str() {
        "P1" => Ok(Vertex::P1),
        "P2" => Ok(Vertex::P2),
        _ => Err(format!("vertex must be 'P1' or 'P2', got {s:?}")),
    }
}

fn parse_family(s: &str) -> Result<SqueezeFamily, String> {
    match s {
        "delta" => Ok(SqueezeFamily::Delta),
        "l-2/3" | "l23" => Ok(SqueezeFamily::TwoThirds),
        "l-2" | "l2" => Ok(SqueezeFamily::InvSquare),
        _ => Err(format!("family must be 'delta', 'l-2/3' or 'l-2', got {s:?}")),
    }
}

fn parse_norm(s: &str) -> Result<Normalization, String> {
    match s {
        "peak" => Ok(Normalization::PeakPsi2),
        "l2" => Ok(Normalization::UnitL2),
        "exterior" => Ok(Normalization::UnitExterior),
        _ => Err(format!("norm must be 'peak', 'l2' or 'exterior', got {s:?}")),
    }
}

fn point_spec(vertex: &str, alpha: [f64; 3], family: &str, g: f64) -> PyResult<PointSpec> {
    Ok(PointSpec {
        vertex: parse_vertex(vertex).map_err(PyValueError::new_err)?,
        alpha,
        law: SqueezeLaw {
            family: parse_family(family).map_err(PyValueError::new_err)?,
            g,
        },
    })
}

/// Bare strengths `(v11, v22, v33)` and mass.
#[pyclass(name = "PotentialConfig", module = "pseudospin", frozen)]
#[derive(Clone)]
struct PyConfig {
    inner: model::PotentialConfig,
}

#[pymethods]
impl PyConfig {
    #[new]
    #[pyo3(signature = (v11, v22, v33, m = 1.0))]
    fn new(v11: f64, v22: f64, v33: f64, m: f64) -> PyResult<Self> {
        model::PotentialConfig::new(v11, v22, v33, m).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn v11(&self) -> f64 {
        self.inner.v11()
    }

    #[getter]
    fn v22(&self) -> f64 {
        self.inner.v22()
    }

    #[getter]
    fn v33(&self) -> f64 {
        self.inner.v33()
    }

    #[getter]
    fn m(&self) -> f64 {
        self.inner.m()
    }

    /// `(v1, v2, v3)`: the mass folded into the outer strengths.
    fn renormalized(&self) -> (f64, f64, f64) {
        let [a, b, c] = self.inner.renormalized();
        (a, b, c)
    }

    #[getter]
    fn va(&self) -> f64 {
        self.inner.va()
    }

    /// Interior `k²` at energy `e`.
    fn k_squared(&self, e: f64) -> PyResult<f64> {
        model::k_squared(&self.inner, e).map_err(err)
    }

    /// Band energies `(e_minus, e_mid, e_plus)` at wavenumber `k`.
    fn bands(&self, k: f64) -> PyResult<(f64, f64, f64)> {
        dispersion_bands(&self.inner, k).map(|b| (b.e_minus, b.e_mid, b.e_plus)).map_err(err)
    }

    /// Panel letter of the strength ordering.
    fn panel(&self) -> String {
        panel_class(&self.inner).letter().to_string()
    }

    /// Flat-band membership: `{"on_a", "on_b", "flat_energy"}`.
    fn flat<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let f = classify_flat(&self.inner);
        let d = PyDict::new_bound(py);
        d.set_item("on_a", f.on_a)?;
        d.set_item("on_b", f.on_b)?;
        d.set_item("flat_energy", f.flat_energy)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "PotentialConfig(v11={}, v22={}, v33={}, m={})",
            self.inner.v11(),
            self.inner.v22(),
            self.inner.v33(),
            self.inner.m()
        )
    }
}

/// A bound state of a centred well.
#[pyclass(name = "BoundState", module = "pseudospin", frozen)]
#[derive(Clone)]
struct PyBoundState {
    inner: BoundStateSolution,
}

#[pymethods]
impl PyBoundState {
    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy
    }

    /// `"+"` or `"-"`.
    #[getter]
    fn parity(&self) -> &'static str {
        self.inner.parity.symbol()
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa
    }

    #[getter]
    fn k2(&self) -> f64 {
        self.inner.k2
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.inner.residual
    }

    fn __repr__(&self) -> String {
        format!("BoundState(energy={}, parity='{}')", self.inner.energy, self.inner.parity.symbol())
    }
}

fn centered(l: f64) -> PyResult<Geometry> {
    Geometry::centered(l).map_err(err)
}

/// Bound states of a well of width `l` centred on the origin, ascending in energy.
#[pyfunction]
fn bound_states(cfg: &PyConfig, l: f64) -> PyResult<Vec<PyBoundState>> {
    let geom = centered(l)?;
    Ok(boundstates::find_bound_states(&cfg.inner, &geom)
        .into_iter()
        .map(|inner| PyBoundState { inner })
        .collect())
}

/// Bound-state energies from the independent shooting integrator.
#[pyfunction]
fn oracle_energies(cfg: &PyConfig, l: f64) -> PyResult<Vec<f64>> {
    Ok(oracle::oracle_bound_states(&cfg.inner, &centered(l)?))
}

/// Spinor samples `(psi1, psi2, psi3)` of a bound state on `xs`.
#[pyfunction]
#[pyo3(signature = (cfg, l, state, xs, norm = "peak"))]
fn eigenfunction(cfg: &PyConfig, l: f64, state: &PyBoundState, xs: Vec<f64>, norm: &str) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let norm = parse_norm(norm).map_err(PyValueError::new_err)?;
    let samples = boundstates::eigenfunction(&state.inner, &cfg.inner, &centered(l)?, &xs, norm).map_err(err)?;
    Ok((
        samples.iter().map(|p| p.psi1).collect(),
        samples.iter().map(|p| p.psi2).collect(),
        samples.iter().map(|p| p.psi3).collect(),
    ))
}

/// Spectrum species of a pencil: `"P"`, `"D"`, `"H1"`, `"H2"`, `"W1"`, `"W2"` or `"unclassified"`.
#[pyfunction]
fn classify(vertex: &str, alpha: [f64; 3]) -> PyResult<&'static str> {
    let pencil = PencilSpec::new(parse_vertex(vertex).map_err(PyValueError::new_err)?, alpha, vec![0.0]).map_err(err)?;
    Ok(spectra::classify(&pencil).tag.as_str())
}

/// Bound states along a pencil: a dict with `type` and `rows` of
/// `(V, energy, parity, branch_id)`.
#[pyfunction]
#[pyo3(signature = (vertex, alpha, l, v_grid, m = 1.0))]
fn sweep<'py>(py: Python<'py>, vertex: &str, alpha: [f64; 3], l: f64, v_grid: Vec<f64>, m: f64) -> PyResult<Bound<'py, PyDict>> {
    let pencil = PencilSpec::new(parse_vertex(vertex).map_err(PyValueError::new_err)?, alpha, v_grid).map_err(err)?;
    let spec = py.allow_threads(|| spectra::sweep(&pencil, &Geometry::centered(l)?, m)).map_err(err)?;
    let rows: Vec<(f64, f64, &str, usize)> = spec
        .points
        .iter()
        .flat_map(|p| p.states.iter().zip(&p.branch_ids).map(move |(s, &id)| (p.v, s.energy, s.parity.symbol(), id)))
        .collect();
    let d = PyDict::new_bound(py);
    d.set_item("type", spec.kind.tag.as_str())?;
    d.set_item("beta", spec.kind.beta)?;
    d.set_item("counts", spec.counts())?;
    d.set_item("rows", rows)?;
    Ok(d)
}

/// Limit energy and parity of level `n` under a squeeze.
#[pyfunction]
#[pyo3(signature = (vertex, alpha, family, g, n, m = 1.0))]
fn limit_energy(vertex: &str, alpha: [f64; 3], family: &str, g: f64, n: usize, m: f64) -> PyResult<(f64, &'static str)> {
    let lv = pointlimits::limit_energy(&point_spec(vertex, alpha, family, g)?, n, m).map_err(err)?;
    Ok((lv.energy, lv.parity.symbol()))
}

/// Limit connection matrix `[[l11, l12], [l21, l22]]` and `chi` of level `n`.
#[pyfunction]
#[pyo3(signature = (vertex, alpha, family, g, n, m = 1.0))]
fn limit_matrix(vertex: &str, alpha: [f64; 3], family: &str, g: f64, n: usize, m: f64) -> PyResult<([[f64; 2]; 2], f64)> {
    let pi = pointlimits::limit_matrix(&point_spec(vertex, alpha, family, g)?, n, m).map_err(err)?;
    let l = &pi.lambda;
    Ok(([[l.l11, l.l12], [l.l21, l.l22]], pi.chi))
}

/// Finite-width energies approaching level `n`: rows of `(l, V, energy, error)`.
#[pyfunction]
#[pyo3(signature = (vertex, alpha, family, g, n, ls, m = 1.0))]
fn convergence(py: Python<'_>, vertex: &str, alpha: [f64; 3], family: &str, g: f64, n: usize, ls: Vec<f64>, m: f64) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let spec = point_spec(vertex, alpha, family, g)?;
    let table = py.allow_threads(|| pointlimits::convergence_study(&spec, n, &ls, m)).map_err(err)?;
    Ok(table.rows.iter().map(|r| (r.l, r.v, r.energy, r.error)).collect())
}

/// Oracle cross-check and invariant suite: `(name, passed, detail)` per check.
#[pyfunction]
#[pyo3(signature = (seed = 42, cases = 20, det_samples = 10_000))]
fn run_verification(py: Python<'_>, seed: u64, cases: usize, det_samples: usize) -> Vec<(String, bool, String)> {
    let opts = VerifyOptions { seed, cases, det_samples };
    py.allow_threads(|| verify::run(&opts))
        .into_iter()
        .map(|c| (c.name, c.passed, c.detail))
        .collect()
}

#[pymodule]
fn pseudospin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", pseudospin_core::VERSION)?;
    m.add_class::<PyConfig>()?;
    m.add_class::<PyBoundState>()?;
    m.add_function(wrap_pyfunction!(bound_states, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_energies, m)?)?;
    m.add_function(wrap_pyfunction!(eigenfunction, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(limit_energy, m)?)?;
    m.add_function(wrap_pyfunction!(limit_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(convergence, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
