//! Python bindings: graphs, recognition, tail completion, the exhaustive
//! oracle and the instance generator.

use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use tailfill_core as core;
use tailfill_core::{GraphClass, GraphError, Mode, OracleError, RecognizeError, TailError};

create_exception!(tailfill, NotInClassError, PyValueError, "The graph is not in the requested class; args[1] is the witness.");

fn graph_err(e: GraphError) -> PyErr {
    match e {
        GraphError::VertexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn recognize_err(e: RecognizeError) -> PyErr {
    match e {
        RecognizeError::Graph(g) => graph_err(g),
        _ => match e.witness() {
            Some(w) => NotInClassError::new_err((e.to_string(), w)),
            None => PyValueError::new_err(e.to_string()),
        },
    }
}

fn tail_err(e: TailError) -> PyErr {
    match e {
        TailError::Graph(g) => graph_err(g),
        TailError::Recognize(r) => recognize_err(r),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn oracle_err(e: OracleError) -> PyErr {
    match e {
        OracleError::Graph(g) => graph_err(g),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn class(name: &str) -> PyResult<GraphClass> {
    name.parse().map_err(PyValueError::new_err)
}

fn mode(name: &str) -> PyResult<Mode> {
    name.parse().map_err(PyValueError::new_err)
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(frozen, name = "Graph", module = "tailfill")]
struct PyGraph {
    inner: core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: core::Graph::new(n, edges).map_err(graph_err)? })
    }

    /// Parses the `n m` / `a b` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: core::Graph::parse(text).map_err(graph_err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.inner.n() && b < self.inner.n() && self.inner.has_edge(a, b)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.inner.check_vertex(v).map_err(graph_err)?;
        Ok(self.inner.degree(v))
    }

    /// `G + uw` plus the given fill edges; `w` is vertex `n`.
    fn with_tail(&self, u: usize, fills: Vec<(usize, usize)>) -> PyResult<Self> {
        self.inner.check_vertex(u).map_err(graph_err)?;
        let inner = self.inner.with_additions(1, fills.into_iter().chain([(u, self.inner.n())])).map_err(graph_err)?;
        Ok(PyGraph { inner })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.to_text() == other.inner.to_text()
    }
}

/// Outcome of a tail completion.
#[pyclass(frozen, get_all, name = "Completion", module = "tailfill")]
struct PyCompletion {
    fill_count: usize,
    /// Fill edges with `a < b`; the new vertex `w` has id `n`.
    fill_edges: Vec<(usize, usize)>,
    /// Family of the winning candidate, e.g. `formation2`.
    winner: String,
}

#[pymethods]
impl PyCompletion {
    fn __repr__(&self) -> String {
        format!("Completion(fill_count={}, fill_edges={:?}, winner={:?})", self.fill_count, self.fill_edges, self.winner)
    }
}

/// Definitional membership test.
#[pyfunction]
fn is_member(g: &PyGraph, class_name: &str) -> PyResult<bool> {
    Ok(core::is_member(&g.inner, class(class_name)?))
}

/// Recognizes the class and returns its structure, serialized. Raises
/// `NotInClassError` with a forbidden vertex set otherwise.
#[pyfunction]
fn recognize(g: &PyGraph, class_name: &str) -> PyResult<String> {
    let g = &g.inner;
    match class(class_name)? {
        GraphClass::Split => core::split_partition(g).map(|p| p.serialize()),
        GraphClass::Threshold => core::threshold_tree(g).map(|t| t.serialize()),
        GraphClass::Qt => core::qt_tree(g).map(|t| t.serialize()),
        GraphClass::P4Sparse => core::p4_sparse_tree(g).map(|t| t.serialize()),
    }
    .map_err(recognize_err)
}

/// Minimum completion of `G + uw` into the class.
#[pyfunction]
#[pyo3(signature = (g, class_name, u, mode_name = "corrected"))]
fn tail(g: &PyGraph, class_name: &str, u: usize, mode_name: &str) -> PyResult<PyCompletion> {
    let r = core::solve(&g.inner, class(class_name)?, u, mode(mode_name)?).map_err(tail_err)?;
    Ok(PyCompletion { fill_count: r.fill_count, fill_edges: r.fill_edges, winner: r.winner.family().to_string() })
}

/// Exhaustive minimum completion of `G + uw`. Returns `(count, edges)`.
#[pyfunction]
#[pyo3(signature = (g, class_name, u, max_vertices = core::oracle::HARD_MAX_VERTICES))]
fn oracle_tail(py: Python<'_>, g: &PyGraph, class_name: &str, u: usize, max_vertices: usize) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let class = class(class_name)?;
    let g = g.inner.clone();
    let r = py.detach(move || core::Oracle::new(class).max_vertices(max_vertices).min_tail_completion(&g, u)).map_err(oracle_err)?;
    Ok((r.fill_count, r.fill_edges))
}

/// A random member of the class and its serialized structure.
#[pyfunction]
fn generate(class_name: &str, n: usize, seed: u64) -> PyResult<(PyGraph, String)> {
    let (g, cert) = core::generate(&core::GenSpec::new(class(class_name)?, n, seed)).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((PyGraph { inner: g }, cert.serialize()))
}

#[pymodule]
fn tailfill(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCompletion>()?;
    m.add("NotInClassError", m.py().get_type::<NotInClassError>())?;
    m.add_function(wrap_pyfunction!(is_member, m)?)?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(tail, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_tail, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(class("P4-sparse").unwrap(), GraphClass::P4Sparse);
        assert_eq!(mode("verbatim").unwrap(), Mode::Verbatim);
    }

    #[test]
    fn graph_methods() {
        let g = PyGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!((g.n(), g.m(), g.edges()), (3, 2, vec![(0, 1), (1, 2)]));
        assert!(!g.has_edge(0, 7));
        let h = g.with_tail(0, vec![(1, 3)]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (0, 3), (1, 2), (1, 3)]);
        assert!(PyGraph::parse(&h.to_text()).unwrap().__eq__(&h));
    }

    #[test]
    fn completion_and_oracle_agree() {
        let g = PyGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let r = tail(&g, "qt", 0, "corrected").unwrap();
        assert_eq!((r.fill_count, r.fill_edges.clone()), (1, vec![(1, 3)]));
        assert!(is_member(&g.with_tail(0, r.fill_edges).unwrap(), "qt").unwrap());
    }
}
