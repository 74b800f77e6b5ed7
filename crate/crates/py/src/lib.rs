//! Python bindings: the hypergraph type with its exact invariants,
//! criticality/witness diagnostics, duality transforms, bound formulas, the
//! extremal search, and certificate verification.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use taucrit::arrow;
use taucrit::canon;
use taucrit::critical;
use taucrit::duality;
use taucrit::extremal::{self, SearchMode};
use taucrit::hypergraph::VertexSet;
use taucrit::solve;
use taucrit::text;

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn vertex_set_to_vec(set: &VertexSet) -> Vec<u32> {
    set.vertices()
}

/// An r-uniform hypergraph on vertices 0..n-1.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Hypergraph {
    inner: taucrit::Hypergraph,
}

#[pymethods]
impl Hypergraph {
    /// Hypergraph(r, n, edges) with edges as an iterable of vertex lists.
    #[new]
    fn new(r: u32, n: u32, edges: Vec<Vec<u32>>) -> PyResult<Self> {
        let inner = taucrit::Hypergraph::from_edge_lists(r, n, &edges).map_err(value_err)?;
        Ok(Hypergraph { inner })
    }

    /// Parses the text interchange format (header `r=<int> n=<int>`,
    /// one edge per line).
    #[staticmethod]
    fn parse(text_input: &str) -> PyResult<Self> {
        let inner = text::parse(text_input).map_err(value_err)?;
        Ok(Hypergraph { inner })
    }

    #[staticmethod]
    fn complete(r: u32, n: u32) -> PyResult<Self> {
        let inner = taucrit::Hypergraph::complete(r, n).map_err(value_err)?;
        Ok(Hypergraph { inner })
    }

    #[staticmethod]
    fn edgeless(r: u32, n: u32) -> PyResult<Self> {
        let inner = taucrit::Hypergraph::edgeless(r, n).map_err(value_err)?;
        Ok(Hypergraph { inner })
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.r()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<Vec<u32>> {
        self.inner.edges().map(|e| e.vertices()).collect()
    }

    fn serialize(&self) -> String {
        text::serialize(&self.inner)
    }

    fn complement(&self) -> PyResult<Self> {
        Ok(Hypergraph {
            inner: self.inner.complement().map_err(value_err)?,
        })
    }

    fn delete_edge(&self, edge: Vec<u32>) -> PyResult<Self> {
        let e = VertexSet::from_vertices(self.inner.n(), &edge).map_err(value_err)?;
        Ok(Hypergraph {
            inner: self.inner.delete_edge(&e).map_err(value_err)?,
        })
    }

    /// Removes a vertex and every incident edge; remaining vertices shift
    /// down. Returns the new hypergraph and the old-to-new relabeling.
    fn delete_vertex(&self, v: u32) -> PyResult<(Self, Vec<Option<u32>>)> {
        let (inner, relabel) = self.inner.delete_vertex(v).map_err(value_err)?;
        let map = (0..self.inner.n()).map(|u| relabel.map_vertex(u)).collect();
        Ok((Hypergraph { inner }, map))
    }

    fn isolated_vertices(&self) -> Vec<u32> {
        vertex_set_to_vec(&self.inner.isolated_vertices())
    }

    /// Hex form of the canonical code; equal iff isomorphic.
    fn canonical_hex(&self) -> String {
        canon::canonical_form(&self.inner).to_hex()
    }

    fn is_isomorphic_to(&self, other: &Hypergraph) -> bool {
        canon::are_isomorphic(&self.inner, &other.inner)
    }

    fn tau(&self) -> u32 {
        solve::transversal_number(&self.inner).value
    }

    fn tau_witness(&self) -> Vec<u32> {
        vertex_set_to_vec(&solve::transversal_number(&self.inner).witness)
    }

    fn alpha(&self) -> u32 {
        solve::independence_number(&self.inner).value
    }

    fn alpha_witness(&self) -> Vec<u32> {
        vertex_set_to_vec(&solve::independence_number(&self.inner).witness)
    }

    fn omega(&self) -> PyResult<u32> {
        Ok(solve::clique_number(&self.inner).map_err(value_err)?.value)
    }

    fn omega_witness(&self) -> PyResult<Vec<u32>> {
        Ok(vertex_set_to_vec(
            &solve::clique_number(&self.inner).map_err(value_err)?.witness,
        ))
    }

    #[pyo3(signature = (cap = 1_000_000))]
    fn min_transversals(&self, cap: usize) -> PyResult<Vec<Vec<u32>>> {
        let list = solve::enumerate_min_transversals(&self.inner, cap).map_err(value_err)?;
        Ok(list.iter().map(vertex_set_to_vec).collect())
    }

    #[pyo3(signature = (cap = 1_000_000))]
    fn max_cliques(&self, cap: usize) -> PyResult<Vec<Vec<u32>>> {
        let list = solve::enumerate_max_cliques(&self.inner, cap).map_err(value_err)?;
        Ok(list.iter().map(vertex_set_to_vec).collect())
    }

    fn is_tau_critical(&self) -> bool {
        critical::is_tau_critical(&self.inner)
    }

    fn is_vertex_critical(&self) -> bool {
        critical::is_vertex_critical(&self.inner)
    }

    /// Full criticality diagnostics as a dict.
    fn criticality_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = critical::criticality(&self.inner);
        let d = PyDict::new(py);
        d.set_item("tau", report.tau)?;
        d.set_item("is_tau_critical", report.is_tau_critical)?;
        d.set_item("is_vertex_critical", report.is_vertex_critical)?;
        d.set_item("isolated", vertex_set_to_vec(&report.isolated))?;
        let per_edge = PyList::empty(py);
        for drop in &report.per_edge {
            per_edge.append((vertex_set_to_vec(&drop.edge), drop.tau_without))?;
        }
        d.set_item("per_edge", per_edge)?;
        let per_vertex = PyList::empty(py);
        for usage in &report.per_vertex {
            per_vertex.append((usage.vertex, usage.in_some_minimum, usage.out_of_some_minimum))?;
        }
        d.set_item("per_vertex", per_vertex)?;
        Ok(d)
    }

    #[pyo3(signature = (cap = 1_000_000))]
    fn witness_report<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyDict>> {
        let report = critical::witness_report(&self.inner, cap).map_err(value_err)?;
        let d = PyDict::new(py);
        d.set_item("k", report.k)?;
        d.set_item("is_witness", report.is_witness)?;
        d.set_item(
            "cliques",
            report.cliques.iter().map(vertex_set_to_vec).collect::<Vec<_>>(),
        )?;
        d.set_item("intersection", vertex_set_to_vec(&report.intersection))?;
        d.set_item("union", vertex_set_to_vec(&report.union))?;
        Ok(d)
    }

    fn extract_tau_critical(&self) -> PyResult<Self> {
        Ok(Hypergraph {
            inner: critical::extract_tau_critical(&self.inner).map_err(value_err)?,
        })
    }

    /// The complementarity identities with every quantity computed on its
    /// own route.
    fn gallai_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = duality::gallai_check(&self.inner).map_err(value_err)?;
        let d = PyDict::new(py);
        d.set_item("n", report.n)?;
        d.set_item("alpha", report.alpha)?;
        d.set_item("tau", report.tau)?;
        d.set_item("omega", report.omega)?;
        d.set_item("tau_complement", report.tau_complement)?;
        d.set_item("omega_complement", report.omega_complement)?;
        d.set_item("all_hold", report.all_hold())?;
        Ok(d)
    }

    /// critical-to-witness: the complement of a tau-critical hypergraph,
    /// with the verification transcript.
    #[pyo3(signature = (cap = 1_000_000))]
    fn to_witness<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<(Self, Bound<'py, PyDict>)> {
        let trace = duality::critical_to_witness(&self.inner, cap).map_err(value_err)?;
        Ok((Hypergraph { inner: trace.output.clone() }, trace_dict(py, &trace)?))
    }

    /// witness-to-critical: a spanning tau-critical partial hypergraph of
    /// the complement of a witness.
    #[pyo3(signature = (cap = 1_000_000))]
    fn to_critical<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<(Self, Bound<'py, PyDict>)> {
        let trace = duality::witness_to_critical(&self.inner, cap).map_err(value_err)?;
        Ok((Hypergraph { inner: trace.output.clone() }, trace_dict(py, &trace)?))
    }

    /// Serialized certificate attesting tau-criticality with tau = t.
    fn certificate(&self, t: u32) -> PyResult<String> {
        let cert = extremal::certificate_for(&self.inner, t).map_err(value_err)?;
        Ok(extremal::serialize_certificate(&cert))
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(r={}, n={}, edges={})",
            self.inner.r(),
            self.inner.n(),
            self.inner.edge_count()
        )
    }

    fn __eq__(&self, other: &Hypergraph) -> bool {
        self.inner == other.inner
    }
}

fn trace_dict<'py>(py: Python<'py>, trace: &duality::EquivalenceTrace) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("direction", trace.direction.as_str())?;
    d.set_item("n", trace.n)?;
    d.set_item("k", trace.k)?;
    d.set_item("t", trace.t)?;
    for (key, value) in &trace.transcript {
        d.set_item(key, value)?;
    }
    Ok(d)
}

/// Exact bound formulas at (r, t).
#[pyfunction]
fn bounds<'py>(py: Python<'py>, r: u32, t: u64) -> PyResult<Bound<'py, PyDict>> {
    let table = extremal::bounds(r, t).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("r", table.r)?;
    d.set_item("t", table.t)?;
    d.set_item("lower_gylt", table.lower_gylt)?;
    d.set_item("upper_gylt", table.upper_gylt)?;
    if let Some(r3) = &table.r3 {
        d.set_item("sp_upper3", r3.sp_upper)?;
        d.set_item("gylt_upper3", r3.gylt_upper)?;
        d.set_item("tuza_upper3", r3.tuza_upper.to_string())?;
        d.set_item("conjecture3", r3.conjecture)?;
    }
    Ok(d)
}

/// Search for the maximum order of an r-uniform tau-critical hypergraph with
/// transversal number t. Returns the record plus serialized certificates.
#[pyfunction]
#[pyo3(signature = (r, t, mode = "exhaustive", budget = 100_000_000, parallel = false))]
fn search_v_max<'py>(
    py: Python<'py>,
    r: u32,
    t: u32,
    mode: &str,
    budget: u64,
    parallel: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match mode {
        "exhaustive" => SearchMode::Exhaustive,
        "budgeted" => SearchMode::Budgeted,
        other => return Err(value_err(format!("unknown mode `{other}`"))),
    };
    let out = extremal::search_v_max(r, t, mode, budget, parallel).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("r", out.record.r)?;
    d.set_item("t", out.record.t)?;
    d.set_item("mode", out.record.mode.as_str())?;
    d.set_item("canvas", out.record.canvas)?;
    d.set_item("best_order", out.record.best_order)?;
    d.set_item(
        "best_canonical",
        out.record.best_code.as_ref().map(|c| c.to_hex()),
    )?;
    d.set_item("exhaustive", out.record.exhaustive)?;
    d.set_item("nodes_explored", out.record.nodes_explored)?;
    d.set_item("classes_expanded", out.record.classes_expanded)?;
    d.set_item("isomorph_rejections", out.record.isomorph_rejections)?;
    d.set_item("hits", out.record.hits)?;
    d.set_item(
        "certificates",
        out.certificates
            .iter()
            .map(extremal::serialize_certificate)
            .collect::<Vec<_>>(),
    )?;
    Ok(d)
}

/// Re-verify a serialized certificate from scratch.
#[pyfunction]
fn verify_certificate<'py>(py: Python<'py>, text_input: &str) -> PyResult<Bound<'py, PyDict>> {
    let cert = extremal::parse_certificate(text_input).map_err(value_err)?;
    let report = extremal::verify_certificate(&cert);
    let d = PyDict::new(py);
    d.set_item("accepted", report.accepted)?;
    d.set_item(
        "clauses",
        report
            .clauses
            .iter()
            .map(|c| (c.name, c.pass, c.detail.clone()))
            .collect::<Vec<_>>(),
    )?;
    d.set_item("first_failure", report.first_failure().map(|c| c.name))?;
    Ok(d)
}

/// Graph-lemma check: maximum cliques of a graph on n <= 2k-1 vertices share
/// a vertex (inequality form |intersection| >= 2k - n).
#[pyfunction]
#[pyo3(signature = (h, cap = 1_000_000))]
fn hajnal_folkman_check<'py>(py: Python<'py>, h: &Hypergraph, cap: usize) -> PyResult<Bound<'py, PyDict>> {
    let report = arrow::hajnal_folkman_check(&h.inner, cap).map_err(value_err)?;
    intersection_dict(py, &report)
}

/// The general-r clique-intersection inequality (open for r >= 3; violations
/// are findings, not errors).
#[pyfunction]
#[pyo3(signature = (h, cap = 1_000_000))]
fn problem2_check<'py>(py: Python<'py>, h: &Hypergraph, cap: usize) -> PyResult<Bound<'py, PyDict>> {
    let report = arrow::problem2_check(&h.inner, cap).map_err(value_err)?;
    intersection_dict(py, &report)
}

fn intersection_dict<'py>(
    py: Python<'py>,
    report: &arrow::CliqueIntersectionReport,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("r", report.r)?;
    d.set_item("n", report.n)?;
    d.set_item("k", report.k)?;
    d.set_item("intersection", vertex_set_to_vec(&report.intersection))?;
    d.set_item("intersection_size", report.intersection_size)?;
    d.set_item("lower_bound", report.lower_bound)?;
    d.set_item("holds", report.holds)?;
    Ok(d)
}

#[pymodule]
fn taucrit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Hypergraph>()?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(search_v_max, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(hajnal_folkman_check, m)?)?;
    m.add_function(wrap_pyfunction!(problem2_check, m)?)?;
    Ok(())
}
