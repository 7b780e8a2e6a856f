//! Python bindings. Reports cross the boundary as JSON-compatible dicts.

use lgk_core::flowcheck::flowcheck as run_flowcheck;
use lgk_core::invariants::{cokernel as core_cokernel, invariant_report, smith_normal_form, IntMatrix};
use lgk_core::lambda::{
    build_auto, build_cantor_horizon_dyck, build_lambda_synchronizing, canonical_form,
    check_synchronizingly_transitive, verify_predecessor_separated, verify_structure, LambdaGraphSystem,
};
use lgk_core::language::{blocks, Bounds};
use lgk_core::subshift::SubshiftSpec;
use lgk_core::{flow, Alphabet, Tri};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn tri(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Unknown => "unknown",
    }
}

/// A subshift description.
#[pyclass(name = "Spec", module = "lgk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySpec {
    inner: SubshiftSpec,
}

#[pymethods]
impl PySpec {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        SubshiftSpec::from_json(text).map(|inner| PySpec { inner }).map_err(err)
    }

    #[staticmethod]
    fn golden_mean() -> Self {
        PySpec {
            inner: SubshiftSpec::golden_mean(),
        }
    }

    #[staticmethod]
    fn full(n: usize) -> PyResult<Self> {
        SubshiftSpec::full(n).map(|inner| PySpec { inner }).map_err(err)
    }

    #[staticmethod]
    fn dyck(n: usize) -> PyResult<Self> {
        SubshiftSpec::dyck(n).map(|inner| PySpec { inner }).map_err(err)
    }

    #[staticmethod]
    fn markov_dyck(matrix: Vec<Vec<i64>>) -> PyResult<Self> {
        SubshiftSpec::markov_dyck(&matrix).map(|inner| PySpec { inner }).map_err(err)
    }

    #[staticmethod]
    fn sft(alphabet: Vec<String>, forbidden: Vec<String>) -> PyResult<Self> {
        let a = Alphabet::new(&alphabet).map_err(err)?;
        let f: Vec<&str> = forbidden.iter().map(String::as_str).collect();
        SubshiftSpec::sft(a, &f).map(|inner| PySpec { inner }).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner.alphabet().names().to_vec()
    }

    /// `word` is a space separated list of symbol names.
    fn is_admissible(&self, word: &str) -> PyResult<bool> {
        let w = self.inner.parse_word(word).map_err(err)?;
        self.inner.is_admissible(w.as_slice()).map_err(err)
    }

    fn blocks(&self, length: usize) -> PyResult<Vec<String>> {
        let a = self.inner.alphabet();
        Ok(blocks(&self.inner, length, Bounds::from_env())
            .map_err(err)?
            .iter()
            .map(|w| a.display_word(w.as_slice()))
            .collect())
    }

    #[pyo3(signature = (target, fresh = "e"))]
    fn expand(&self, target: &str, fresh: &str) -> PyResult<Self> {
        flow::expand_spec(&self.inner, target, fresh)
            .map(|inner| PySpec { inner })
            .map_err(err)
    }

    /// Three-valued simplicity prediction, `"yes" | "no" | "unknown"`.
    #[pyo3(signature = (word_len = 2, bound = 2))]
    fn simplicity_predicted(&self, word_len: usize, bound: usize) -> PyResult<&'static str> {
        check_synchronizingly_transitive(&self.inner, word_len, bound, Bounds::from_env())
            .map(|r| tri(r.simplicity_predicted))
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Spec(kind={:?}, alphabet={:?})", self.inner.kind(), self.inner.alphabet().names())
    }
}

/// A truncated λ-graph system.
#[pyclass(name = "System", module = "lgk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySystem {
    inner: LambdaGraphSystem,
}

#[pymethods]
impl PySystem {
    /// `builder` is `"auto"`, `"canonical"` or `"horizon"`.
    #[staticmethod]
    #[pyo3(signature = (spec, depth, builder = "auto"))]
    fn build(spec: &PySpec, depth: usize, builder: &str) -> PyResult<Self> {
        let bounds = Bounds::from_env();
        let inner = match builder {
            "auto" => build_auto(&spec.inner, depth, bounds),
            "canonical" => build_lambda_synchronizing(&spec.inner, depth, bounds),
            "horizon" => match &spec.inner {
                SubshiftSpec::Dyck(_) | SubshiftSpec::MarkovDyck(_) => build_auto(&spec.inner, depth, bounds),
                _ => return Err(PyValueError::new_err("the horizon builder needs a dyck or markov_dyck spec")),
            },
            other => return Err(PyValueError::new_err(format!("unknown builder {other:?}"))),
        };
        inner.map(|inner| PySystem { inner }).map_err(err)
    }

    #[staticmethod]
    fn dyck_horizon(n: usize, depth: usize) -> PyResult<Self> {
        build_cantor_horizon_dyck(n, depth).map(|inner| PySystem { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        LambdaGraphSystem::from_json(text).map(|inner| PySystem { inner }).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn to_dot(&self) -> PyResult<String> {
        self.inner.to_dot().map_err(err)
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    fn level_sizes(&self) -> Vec<usize> {
        self.inner.level_sizes()
    }

    /// Structural violations as messages; empty when every check passes.
    fn verify(&self) -> Vec<String> {
        [verify_structure(&self.inner), verify_predecessor_separated(&self.inner)]
            .into_iter()
            .filter_map(|r| r.err().map(|v| v.to_string()))
            .collect()
    }

    fn canonical(&self) -> PyResult<Self> {
        canonical_form(&self.inner).map(|c| PySystem { inner: c.system }).map_err(err)
    }

    /// The invariant report for levels `0..levels` as a dict.
    fn invariants<'py>(&self, py: Python<'py>, levels: usize) -> PyResult<Bound<'py, PyAny>> {
        let r = invariant_report(&self.inner, levels).map_err(err)?;
        loads(py, &r.to_json().to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("System(level_sizes={:?})", self.inner.level_sizes())
    }
}

/// Compares the invariants of `spec` and of its expansion at `target`.
#[pyfunction]
#[pyo3(signature = (spec, target, levels = 4, fresh = None))]
fn flowcheck<'py>(
    py: Python<'py>,
    spec: &PySpec,
    target: &str,
    levels: usize,
    fresh: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = run_flowcheck(&spec.inner, target, fresh, levels, Bounds::from_env()).map_err(err)?;
    loads(py, &r.to_json().to_string())
}

fn matrix(rows: &[Vec<i64>]) -> PyResult<IntMatrix> {
    IntMatrix::from_i64_rows(rows).map_err(err)
}

/// Invariant factors `d_1 | d_2 | …` as decimal strings.
#[pyfunction]
fn smith_diagonal(rows: Vec<Vec<i64>>) -> PyResult<Vec<String>> {
    Ok(smith_normal_form(&matrix(&rows)?).diagonal().iter().map(|d| d.to_string()).collect())
}

/// `Z^rows / M·Z^cols` as text, e.g. `"Z ⊕ Z/2Z"`.
#[pyfunction]
fn cokernel(rows: Vec<Vec<i64>>) -> PyResult<String> {
    Ok(core_cokernel(&matrix(&rows)?).to_string())
}

#[pymodule]
fn lgk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpec>()?;
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(flowcheck, m)?)?;
    m.add_function(wrap_pyfunction!(smith_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(cokernel, m)?)?;
    Ok(())
}
