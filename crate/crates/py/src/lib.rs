//! Python bindings for `sds-core`. Exact rationals cross the boundary as
//! `fractions.Fraction`; inputs may be `int`, `Fraction`, `str` or `float`
//! (floats are converted exactly).

use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyTuple};

use sds_core::corpus::{corpus_entry, corpus_ids as core_corpus_ids};
use sds_core::engine::{verify_certificate as core_verify, yys_decide, EngineConfig, Verdict};
use sds_core::geometry::{
    locate_point as core_locate, max_diameter_at_depth as core_max_diam, DEFAULT_CELL_BUDGET,
};
use sds_core::oracle::{
    grid_min as core_grid_min, random_negative_search as core_random, GridSpec, DEFAULT_GRID_BUDGET,
};
use sds_core::rational::{format_rational, parse_rational};
use sds_core::report::{
    certificate_to_records, records_to_certificate, to_json, CertificateRecord, DecisionReport, InputEcho,
};
use sds_core::substitution::{self, SubMatrix};
use sds_core::{parse_form, Chain, Form, NegativityMode, Point, SdsError};

fn err(e: SdsError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_fraction<'py>(py: Python<'py>, value: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(value),))
}

fn from_python(value: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    let fraction = value
        .py()
        .import("fractions")?
        .getattr("Fraction")?
        .call1((value,))?;
    let text: String = fraction.str()?.extract()?;
    parse_rational(&text).map_err(err)
}

fn fractions<'py>(py: Python<'py>, values: &[BigRational]) -> PyResult<Bound<'py, PyList>> {
    let items = values
        .iter()
        .map(|v| to_fraction(py, v))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn point_from(values: &[Bound<'_, PyAny>]) -> PyResult<Point> {
    Ok(Point::new(
        values.iter().map(from_python).collect::<PyResult<_>>()?,
    ))
}

fn matrix_to_python<'py>(py: Python<'py>, m: &SubMatrix) -> PyResult<Bound<'py, PyList>> {
    let rows = m
        .rows()
        .iter()
        .map(|r| fractions(py, r))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, rows)
}

fn json_loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// A homogeneous polynomial with exact rational coefficients.
#[pyclass(name = "Form", module = "sds", frozen)]
pub struct PyForm {
    inner: Form,
    vars: Vec<String>,
}

impl PyForm {
    fn wrap(&self, inner: Form) -> PyForm {
        PyForm {
            inner,
            vars: self.vars.clone(),
        }
    }
}

#[pymethods]
impl PyForm {
    #[new]
    fn new(text: &str, vars: Vec<String>) -> PyResult<Self> {
        let inner = parse_form(text, &vars).map_err(err)?;
        Ok(PyForm { inner, vars })
    }

    /// Loads a bundled example by id.
    #[staticmethod]
    fn corpus(id: &str) -> PyResult<Self> {
        let entry =
            corpus_entry(id).ok_or_else(|| PyValueError::new_err(format!("unknown corpus id `{id}`")))?;
        Ok(PyForm {
            inner: entry.form().map_err(err)?,
            vars: entry.vars(),
        })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.vars.clone()
    }

    /// Mapping from exponent tuples to coefficients.
    fn coefficients<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (m, c) in self.inner.terms() {
            out.set_item(PyTuple::new(py, m.exponents())?, to_fraction(py, c)?)?;
        }
        Ok(out)
    }

    fn evaluate<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let value = self.inner.evaluate(&point_from(&point)?).map_err(err)?;
        to_fraction(py, &value)
    }

    /// `g(T) = f(M T)` for a square matrix `M` given as a list of rows.
    fn substitute(&self, matrix: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<PyForm> {
        let rows = matrix
            .iter()
            .map(|r| r.iter().map(from_python).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        let m = SubMatrix::from_rows(rows).map_err(err)?;
        Ok(self.wrap(self.inner.substitute_linear(&m).map_err(err)?))
    }

    /// Substitutes the composed matrix of a chain of 1-based indices.
    fn substitute_chain(&self, chain: Vec<usize>) -> PyResult<PyForm> {
        let m = substitution::compose_chain(&Chain::new(chain), self.inner.nvars()).map_err(err)?;
        Ok(self.wrap(self.inner.substitute_linear(&m).map_err(err)?))
    }

    fn is_trivially_positive(&self) -> bool {
        self.inner.is_trivially_positive()
    }

    #[pyo3(signature = (mode = "value"))]
    fn is_trivially_negative(&self, mode: &str) -> PyResult<bool> {
        Ok(self.inner.is_trivially_negative(parse_mode(mode)?))
    }

    fn __str__(&self) -> String {
        self.inner.to_string_with(&self.vars)
    }

    fn __repr__(&self) -> String {
        format!("Form({:?}, {:?})", self.__str__(), self.vars)
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        other
            .cast::<PyForm>()
            .is_ok_and(|o| o.get().inner == self.inner && o.get().vars == self.vars)
    }
}

fn parse_mode(mode: &str) -> PyResult<NegativityMode> {
    match mode {
        "value" => Ok(NegativityMode::Value),
        "coeffs" => Ok(NegativityMode::Coeffs),
        other => Err(PyValueError::new_err(format!(
            "negativity mode must be 'value' or 'coeffs', got '{other}'"
        ))),
    }
}

/// Runs the decision procedure and returns the JSON report as a dict.
/// With `certificate=True` a positive verdict carries the certificate
/// records under `verdict["certificate"]`.
#[pyfunction]
#[pyo3(signature = (
    form, *, max_depth = 30, negativity_mode = None, dedup = None, root_check = None,
    node_budget = 1_000_000, compat = false, certificate = false
))]
#[allow(clippy::too_many_arguments)]
fn decide<'py>(
    py: Python<'py>,
    form: &PyForm,
    max_depth: u32,
    negativity_mode: Option<&str>,
    dedup: Option<bool>,
    root_check: Option<bool>,
    node_budget: usize,
    compat: bool,
    certificate: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = if compat {
        EngineConfig::compat()
    } else {
        EngineConfig::default()
    };
    cfg.max_depth = max_depth;
    cfg.node_budget = node_budget;
    cfg.emit_certificate = certificate;
    if let Some(mode) = negativity_mode {
        cfg.negativity_mode = parse_mode(mode)?;
    }
    if let Some(d) = dedup {
        cfg.dedup = d;
    }
    if let Some(r) = root_check {
        cfg.root_check = r;
    }
    let decision = py.detach(|| yys_decide(&form.inner, &cfg)).map_err(err)?;
    let echo = InputEcho {
        polynomial: form.__str__(),
        vars: form.vars.clone(),
        corpus: None,
    };
    let report = json_loads(
        py,
        &to_json(&DecisionReport::new(echo, &cfg, &decision)).map_err(err)?,
    )?;
    if let Verdict::PositiveSemidefinite {
        certificate: Some(cert),
        ..
    } = &decision.verdict
    {
        let records = to_json(&certificate_to_records(cert, &form.vars)).map_err(err)?;
        report
            .get_item("verdict")?
            .set_item("certificate", json_loads(py, &records)?)?;
    }
    Ok(report)
}

/// Checks certificate records (dicts with `chain` and `form`) against `form`.
#[pyfunction]
fn verify_certificate(py: Python<'_>, form: &PyForm, records: &Bound<'_, PyAny>) -> PyResult<bool> {
    let text: String = py
        .import("json")?
        .getattr("dumps")?
        .call1((records,))?
        .extract()?;
    let records: Vec<CertificateRecord> =
        serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let cert = records_to_certificate(&records, &form.vars, form.inner.degree()).map_err(err)?;
    Ok(core_verify(&form.inner, &cert))
}

#[pyfunction]
fn weighted_matrix(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyList>> {
    matrix_to_python(py, &substitution::weighted_matrix(n).map_err(err)?)
}

/// `P * W_n` for a 1-based permutation.
#[pyfunction]
fn sds_matrix(py: Python<'_>, perm: Vec<usize>) -> PyResult<Bound<'_, PyList>> {
    matrix_to_python(py, &substitution::sds_matrix(&perm).map_err(err)?)
}

#[pyfunction]
fn compose_chain(py: Python<'_>, chain: Vec<usize>, n: usize) -> PyResult<Bound<'_, PyList>> {
    matrix_to_python(
        py,
        &substitution::compose_chain(&Chain::new(chain), n).map_err(err)?,
    )
}

#[pyfunction]
fn barycenter_image(py: Python<'_>, chain: Vec<usize>, n: usize) -> PyResult<Bound<'_, PyList>> {
    let p = substitution::barycenter_image(&Chain::new(chain), n).map_err(err)?;
    fractions(py, p.coords())
}

/// Exact minimum over the simplex grid with denominator `denominator`;
/// returns `(min, argmin)`.
#[pyfunction]
fn grid_min<'py>(py: Python<'py>, form: &PyForm, denominator: u64) -> PyResult<Bound<'py, PyTuple>> {
    let grid = GridSpec {
        denominator,
        nvars: form.inner.nvars(),
    };
    let g = py
        .detach(|| core_grid_min(&form.inner, &grid, DEFAULT_GRID_BUDGET))
        .map_err(err)?;
    PyTuple::new(
        py,
        [
            to_fraction(py, &g.min)?,
            fractions(py, g.argmin.coords())?.into_any(),
        ],
    )
}

/// First random point with a negative value as `(point, value)`, or `None`.
#[pyfunction]
#[pyo3(signature = (form, trials, seed = 0))]
fn random_negative_search<'py>(
    py: Python<'py>,
    form: &PyForm,
    trials: u64,
    seed: u64,
) -> PyResult<Option<Bound<'py, PyTuple>>> {
    let hit = py.detach(|| core_random(&form.inner, trials, seed));
    hit.map(|(p, v)| PyTuple::new(py, [fractions(py, p.coords())?.into_any(), to_fraction(py, &v)?]))
        .transpose()
}

/// Largest squared cell diameter in the `depth`-th subdivision.
#[pyfunction]
fn max_diameter_at_depth(py: Python<'_>, n: usize, depth: u32) -> PyResult<Bound<'_, PyAny>> {
    let d = py
        .detach(|| core_max_diam(n, depth, DEFAULT_CELL_BUDGET))
        .map_err(err)?;
    to_fraction(py, &d)
}

/// Lexicographically first chain of length `depth` whose cell contains `point`.
#[pyfunction]
fn locate_point(point: Vec<Bound<'_, PyAny>>, depth: u32) -> PyResult<Vec<usize>> {
    let chain = core_locate(&point_from(&point)?, depth).map_err(err)?;
    Ok(chain.steps().to_vec())
}

#[pyfunction]
fn corpus_ids() -> Vec<&'static str> {
    core_corpus_ids()
}

#[pymodule]
fn sds(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(sds_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(compose_chain, m)?)?;
    m.add_function(wrap_pyfunction!(barycenter_image, m)?)?;
    m.add_function(wrap_pyfunction!(grid_min, m)?)?;
    m.add_function(wrap_pyfunction!(random_negative_search, m)?)?;
    m.add_function(wrap_pyfunction!(max_diameter_at_depth, m)?)?;
    m.add_function(wrap_pyfunction!(locate_point, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_ids, m)?)?;
    Ok(())
}
