//! Python bindings: graphs, α̃, tagged cycles, switches, the spectrum engine
//! and certificates.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use tilde_core::certificate::{verify_certificate, Certificate};
use tilde_core::engine::{self, EngineError, Outcome, SpectrumOptions, SpectrumVerdict};
use tilde_core::graph::{self as core_graph, min_degree, parse_edge_list, serialize_edge_list};
use tilde_core::structures::{cycles_of, verify_tagged_cycle};
use tilde_core::{oracle, Switch, TaggedCycle};

create_exception!(tilde, TheoremViolation, PyException);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn engine_err(e: EngineError) -> PyErr {
    match e {
        EngineError::TheoremViolation(v) => TheoremViolation::new_err(v.to_string()),
        other => value_err(other),
    }
}

#[pyclass(name = "Graph", module = "tilde", frozen)]
pub struct PyGraph {
    inner: core_graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = core_graph::Graph::from_edges(n, edges).map_err(value_err)?;
        Ok(PyGraph { inner })
    }

    /// Parses the `n m` + `u v` lines edge-list format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_edge_list(text).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: core_graph::complete(n).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: core_graph::complete_bipartite(a, b).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: core_graph::cycle(n).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn petersen() -> Self {
        PyGraph {
            inner: core_graph::petersen(),
        }
    }

    /// Seeded `G(n, p)`; the same seed gives the same graph as the CLI.
    #[staticmethod]
    fn gnp(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        Ok(PyGraph {
            inner: core_graph::generate_gnp(n, p, seed).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn neighbours(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbours(v).to_vec())
    }

    fn min_degree(&self) -> usize {
        min_degree(&self.inner)
    }

    fn to_edge_list(&self) -> String {
        serialize_edge_list(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "TaggedCycle", module = "tilde", frozen)]
pub struct PyTaggedCycle {
    inner: TaggedCycle,
}

#[pymethods]
impl PyTaggedCycle {
    #[new]
    fn new(cycle: Vec<usize>, apex: usize, attach: usize) -> Self {
        PyTaggedCycle {
            inner: TaggedCycle {
                cycle,
                apex,
                attach,
            },
        }
    }

    #[getter]
    fn cycle(&self) -> Vec<usize> {
        self.inner.cycle.clone()
    }

    #[getter]
    fn apex(&self) -> usize {
        self.inner.apex
    }

    #[getter]
    fn attach(&self) -> usize {
        self.inner.attach
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// The two cycles it carries, of lengths ℓ and ℓ + 1.
    fn cycles(&self) -> (Vec<usize>, Vec<usize>) {
        cycles_of(&self.inner)
    }

    fn verify(&self, g: &PyGraph) -> PyResult<()> {
        verify_tagged_cycle(&g.inner, &self.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "TaggedCycle(cycle={:?}, apex={}, attach={})",
            self.inner.cycle, self.inner.apex, self.inner.attach
        )
    }
}

#[pyclass(name = "Switch", module = "tilde", frozen)]
pub struct PySwitch {
    inner: Switch,
}

#[pymethods]
impl PySwitch {
    #[new]
    fn new(path: Vec<usize>, apex: usize, t: usize, s: usize) -> Self {
        PySwitch {
            inner: Switch { path, apex, t, s },
        }
    }

    #[getter]
    fn path(&self) -> Vec<usize> {
        self.inner.path.clone()
    }

    #[getter]
    fn apex(&self) -> usize {
        self.inner.apex
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s
    }

    fn verify(&self, g: &PyGraph) -> PyResult<()> {
        self.inner.verify(&g.inner).map_err(value_err)
    }

    fn improves_on(&self, other: &PySwitch) -> bool {
        self.inner.improves_on(&other.inner)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "Certificate", module = "tilde", frozen)]
pub struct PyCertificate {
    inner: Certificate,
}

#[pymethods]
impl PyCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCertificate {
            inner: serde_json::from_str(text).map_err(value_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    #[getter]
    fn verdict(&self) -> PyResult<String> {
        let v = serde_json::to_value(self.inner.verdict).map_err(value_err)?;
        Ok(v.as_str().unwrap_or_default().to_string())
    }

    #[getter]
    fn lengths(&self) -> Vec<usize> {
        self.inner.lengths()
    }

    #[getter]
    fn cycles(&self) -> BTreeMap<usize, Vec<usize>> {
        self.inner
            .cycles
            .iter()
            .map(|c| (c.length, c.cycle.clone()))
            .collect()
    }

    #[getter]
    fn graph_hash(&self) -> String {
        self.inner.graph_hash.clone()
    }

    #[getter]
    fn oracle_assisted(&self) -> bool {
        self.inner.provenance.oracle_assisted
    }

    #[getter]
    fn trace_len(&self) -> usize {
        self.inner.trace.len()
    }

    /// Raises `ValueError` naming the first bad entry.
    fn verify(&self, g: &PyGraph) -> PyResult<()> {
        verify_certificate(&self.inner, &g.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(verdict={:?}, lengths={:?})",
            self.inner.verdict,
            self.inner.lengths()
        )
    }
}

/// `(k, a, b)`: α̃ and the split of its witness.
#[pyfunction]
fn alpha_tilde(g: &PyGraph) -> PyResult<(usize, usize, usize)> {
    let w = tilde_core::alpha_tilde(&g.inner).map_err(value_err)?;
    Ok((w.k, w.a, w.b))
}

#[pyfunction]
fn independence_number(g: &PyGraph) -> usize {
    tilde_core::independence_number(&g.inner)
}

/// Whether `δ(G) ≥ α̃(G)`.
#[pyfunction]
fn condition_holds(g: &PyGraph) -> bool {
    tilde_core::alpha_tilde(&g.inner).is_ok_and(|w| min_degree(&g.inner) >= w.k)
}

/// Runs the engine and returns a certificate; raises `TheoremViolation`
/// when a guaranteed structure is missing.
#[pyfunction]
#[pyo3(signature = (g, fallback_oracle=false))]
fn spectrum(py: Python<'_>, g: &PyGraph, fallback_oracle: bool) -> PyResult<PyCertificate> {
    let opts = SpectrumOptions { fallback_oracle };
    let verdict: SpectrumVerdict = py
        .detach(|| engine::full_spectrum(&g.inner, opts))
        .map_err(engine_err)?;
    Ok(PyCertificate {
        inner: Certificate::from_verdict(&g.inner, &verdict),
    })
}

#[pyfunction]
fn find_initial_tilde(g: &PyGraph) -> PyResult<PyTaggedCycle> {
    let inner = engine::find_initial_tilde(&g.inner).map_err(engine_err)?;
    Ok(PyTaggedCycle { inner })
}

/// A tagged cycle one or two longer than `tc`, with the number of switch
/// improvements it took.
#[pyfunction]
fn extend(g: &PyGraph, tc: &PyTaggedCycle) -> PyResult<(PyTaggedCycle, usize)> {
    let w = tilde_core::alpha_tilde(&g.inner).map_err(value_err)?;
    let report = engine::extend(&g.inner, &tc.inner, w.a, w.b, SpectrumOptions::default())
        .map_err(engine_err)?;
    Ok((
        PyTaggedCycle {
            inner: report.tagged,
        },
        report.improvements,
    ))
}

/// One engine step from `sw`: either a longer tagged cycle or a better switch.
#[pyfunction]
fn engine_step(py: Python<'_>, g: &PyGraph, sw: &PySwitch) -> PyResult<Py<PyAny>> {
    let w = tilde_core::alpha_tilde(&g.inner).map_err(value_err)?;
    let r = engine::engine_step(&g.inner, &sw.inner, w.a, w.b).map_err(engine_err)?;
    Ok(match r.outcome {
        Outcome::FoundTagged(inner) => Py::new(py, PyTaggedCycle { inner })?.into_any(),
        Outcome::BetterSwitch(inner) => Py::new(py, PySwitch { inner })?.into_any(),
    })
}

/// Exhaustive cycle spectrum: length to one witness cycle.
#[pyfunction]
fn oracle_spectrum(py: Python<'_>, g: &PyGraph) -> PyResult<BTreeMap<usize, Vec<usize>>> {
    let s = py
        .detach(|| oracle::oracle_spectrum(&g.inner))
        .map_err(value_err)?;
    Ok(s.witnesses)
}

#[pymodule]
fn tilde(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyTaggedCycle>()?;
    m.add_class::<PySwitch>()?;
    m.add_class::<PyCertificate>()?;
    m.add("TheoremViolation", m.py().get_type::<TheoremViolation>())?;
    m.add_function(wrap_pyfunction!(alpha_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(independence_number, m)?)?;
    m.add_function(wrap_pyfunction!(condition_holds, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(find_initial_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(engine_step, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_spectrum, m)?)?;
    Ok(())
}
