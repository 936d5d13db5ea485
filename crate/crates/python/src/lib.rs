//! Python bindings for `becurv`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use becurv::curvature::{curvature_oracle, graph_curvature, vertex_curvature};
use becurv::spectra::{harmonic_eigenpairs, DEFAULT_EIGEN_TOL};
use becurv::verify::{full_report, ReportOptions, DEFAULT_SAMPLES, DEFAULT_SEED};
use becurv::{generators, operators, Dimension};

fn py_err(e: becurv::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts a float (`float('inf')` allowed) or the string `"inf"`.
fn dimension(value: &Bound<'_, PyAny>) -> PyResult<Dimension> {
    if let Ok(s) = value.extract::<String>() {
        return s.parse::<Dimension>().map_err(py_err);
    }
    let m: f64 = value.extract()?;
    Dimension::finite(m).map_err(py_err)
}

fn dimensions(values: &[Bound<'_, PyAny>]) -> PyResult<Vec<Dimension>> {
    values.iter().map(dimension).collect()
}

/// Connected weighted graph without loops or multi-edges.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: becurv::Graph,
}

impl PyGraph {
    pub fn inner(&self) -> &becurv::Graph {
        &self.inner
    }

    fn vertex(&self, x: usize) -> PyResult<usize> {
        if x < self.inner.n() {
            Ok(x)
        } else {
            Err(py_err(becurv::Error::VertexOutOfRange { index: x, n: self.inner.n() }))
        }
    }

    fn function(&self, f: Vec<f64>) -> PyResult<Vec<f64>> {
        operators::VertexFunction::new(&self.inner, f)
            .map(|v| v.into_inner())
            .map_err(py_err)
    }
}

impl From<becurv::Graph> for PyGraph {
    fn from(inner: becurv::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    /// Edges as `(a, b, weight)` over vertices `0..n`.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<Self> {
        becurv::Graph::from_edges(n, edges).map(Into::into).map_err(py_err)
    }

    /// Parses the `a b [w]` edge-list format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        becurv::Graph::parse_edge_list(text).map(Into::into).map_err(py_err)
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        generators::complete(n).map(Into::into).map_err(py_err)
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        generators::cycle(n).map(Into::into).map_err(py_err)
    }

    #[staticmethod]
    fn hypercube(k: usize) -> PyResult<Self> {
        generators::hypercube(k).map(Into::into).map_err(py_err)
    }

    #[staticmethod]
    fn bridge_cliques(n: usize) -> PyResult<Self> {
        generators::bridge_cliques(n).map(Into::into).map_err(py_err)
    }

    /// Cartesian product `self × other`.
    fn product(&self, other: &PyGraph) -> PyResult<Self> {
        generators::product(&self.inner, &other.inner).map(Into::into).map_err(py_err)
    }

    fn scaled(&self, c: f64) -> PyResult<Self> {
        self.inner.scaled(c).map(Into::into).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn degrees(&self) -> Vec<f64> {
        self.inner.degrees().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.edges().to_vec()
    }

    fn diameter(&self) -> usize {
        self.inner.diameter().diameter
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn laplacian(&self, f: Vec<f64>) -> PyResult<Vec<f64>> {
        let f = self.function(f)?;
        Ok(operators::apply_laplacian(&self.inner, &f))
    }

    fn gamma(&self, f: Vec<f64>, h: Vec<f64>, x: usize) -> PyResult<f64> {
        let (f, h, x) = (self.function(f)?, self.function(h)?, self.vertex(x)?);
        Ok(operators::gamma(&self.inner, &f, &h, x))
    }

    fn gamma2(&self, f: Vec<f64>, x: usize) -> PyResult<f64> {
        let (f, x) = (self.function(f)?, self.vertex(x)?);
        Ok(operators::gamma2_local(&self.inner, &f, x))
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Sorted eigenvalues of the normalized Laplacian.
#[pyfunction]
fn spectrum(g: &PyGraph) -> PyResult<Vec<f64>> {
    harmonic_eigenpairs(&g.inner, DEFAULT_EIGEN_TOL)
        .map(|s| s.eigenvalues())
        .map_err(py_err)
}

/// `(λ, f)` pairs with `(−Δ)f = λf`.
#[pyfunction]
fn eigenpairs(g: &PyGraph) -> PyResult<Vec<(f64, Vec<f64>)>> {
    let s = harmonic_eigenpairs(&g.inner, DEFAULT_EIGEN_TOL).map_err(py_err)?;
    Ok(s.pairs.into_iter().map(|p| (p.lambda, p.f)).collect())
}

/// Returns `(kappa, argmin, per_vertex)`.
#[pyfunction]
fn curvature(g: &PyGraph, m: &Bound<'_, PyAny>) -> PyResult<(f64, usize, Vec<f64>)> {
    let r = graph_curvature(&g.inner, dimension(m)?).map_err(py_err)?;
    Ok((r.kappa, r.argmin, r.per_vertex))
}

#[pyfunction]
fn vertex_kappa(g: &PyGraph, x: usize, m: &Bound<'_, PyAny>) -> PyResult<f64> {
    vertex_curvature(&g.inner, g.vertex(x)?, dimension(m)?).map_err(py_err)
}

/// Independent numerical minimization, for cross-checking.
#[pyfunction]
#[pyo3(signature = (g, x, m, trials=20, seed=0))]
fn oracle_kappa(g: &PyGraph, x: usize, m: &Bound<'_, PyAny>, trials: usize, seed: u64) -> PyResult<f64> {
    let (x, m) = (g.vertex(x)?, dimension(m)?);
    Ok(curvature_oracle(&g.inner, x, m, trials, seed))
}

/// Full verification report as JSON text.
#[pyfunction]
#[pyo3(signature = (g, m, alpha=vec![], seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES))]
fn verify(
    g: &PyGraph,
    m: Vec<Bound<'_, PyAny>>,
    alpha: Vec<f64>,
    seed: u64,
    samples: usize,
) -> PyResult<String> {
    let m = dimensions(&m)?;
    let report = full_report(&g.inner, &m, &alpha, ReportOptions { seed, samples }).map_err(py_err)?;
    becurv::cli::to_json(&report).map_err(py_err)
}

#[pymodule(name = "becurv")]
fn becurv_module(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_class::<PyGraph>()?;
    module.add_function(wrap_pyfunction!(spectrum, module)?)?;
    module.add_function(wrap_pyfunction!(eigenpairs, module)?)?;
    module.add_function(wrap_pyfunction!(curvature, module)?)?;
    module.add_function(wrap_pyfunction!(vertex_kappa, module)?)?;
    module.add_function(wrap_pyfunction!(oracle_kappa, module)?)?;
    module.add_function(wrap_pyfunction!(verify, module)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_generators() {
        let k2 = PyGraph::complete(2).unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
        assert_eq!(k2.degrees(), vec![1.0, 1.0]);
        let q2 = PyGraph::hypercube(2).unwrap();
        assert_eq!(q2.diameter(), 2);
        assert_eq!(q2.__repr__(), "Graph(n=4, edges=4)");
    }

    #[test]
    fn round_trips_edge_list() {
        let g = PyGraph::from_edge_list("a b 2.5\nb c\n").unwrap();
        let h = PyGraph::from_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g.inner(), h.inner());
    }

    #[test]
    fn operators_match_core() {
        let g = PyGraph::cycle(4).unwrap();
        let f = vec![1.0, 0.0, -1.0, 0.5];
        assert_eq!(g.laplacian(f.clone()).unwrap(), operators::apply_laplacian(g.inner(), &f));
        assert_eq!(g.gamma2(f.clone(), 1).unwrap(), operators::gamma2_local(g.inner(), &f, 1));
    }

    #[test]
    fn spectrum_of_k2() {
        let s = spectrum(&PyGraph::complete(2).unwrap()).unwrap();
        assert!(s[0].abs() < 1e-14 && (s[1] - 2.0).abs() < 1e-14);
    }
}
