//! Python bindings: multigraphs, exact counts, bound and dichotomy
//! reports, duality and gauge trials, the cubic-graph distribution and
//! identity, and the evaluation vectors and matrices behind them.
//!
//! Exact values cross the boundary losslessly: rationals become
//! `fractions.Fraction`, Gaussian rationals become `(re, im)` Fraction
//! pairs, counts become `int`.

use num_traits::Zero;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use gaugecount::counting::{self, WeightAssignment};
use gaugecount::signatures::{self, SignatureVector};
use gaugecount::trials;
use gaugecount::{GaussianRational, Multigraph, Rational};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A Gaussian rational as an exact `(re, im)` pair of Fractions.
fn gaussian_pair(z: &GaussianRational) -> (Rational, Rational) {
    (z.re.clone(), z.im.clone())
}

/// Entries of a signature vector that is real by construction.
fn real_entries(v: &SignatureVector) -> PyResult<Vec<Rational>> {
    v.entries()
        .iter()
        .map(|z| {
            if z.im.is_zero() {
                Ok(z.re.clone())
            } else {
                Err(value_err("vector has a nonreal entry"))
            }
        })
        .collect()
}

/// An exact number from Python: a `fractions.Fraction` or an `int`.
#[derive(FromPyObject)]
enum ExactNumber {
    Fraction(Rational),
    Int(i64),
}

impl ExactNumber {
    fn into_rational(self) -> Rational {
        match self {
            ExactNumber::Fraction(r) => r,
            ExactNumber::Int(n) => Rational::from_integer(n.into()),
        }
    }
}

/// A weight entry: a real exact number, or an `(re, im)` pair.
#[derive(FromPyObject)]
enum WeightEntry {
    Complex(ExactNumber, ExactNumber),
    Real(ExactNumber),
}

impl WeightEntry {
    fn into_gaussian(self) -> GaussianRational {
        match self {
            WeightEntry::Complex(re, im) => {
                GaussianRational::new(re.into_rational(), im.into_rational())
            }
            WeightEntry::Real(re) => GaussianRational::from(re.into_rational()),
        }
    }
}

fn weight_assignment(
    g: &Multigraph,
    weights: Vec<Vec<WeightEntry>>,
) -> PyResult<WeightAssignment> {
    let vectors = weights
        .into_iter()
        .map(|row| SignatureVector::new(row.into_iter().map(WeightEntry::into_gaussian).collect()))
        .collect();
    WeightAssignment::new(g, vectors).map_err(value_err)
}

/// An undirected multigraph with a fixed vertex range `0..vertex_count`.
#[pyclass(frozen, name = "Multigraph", module = "gaugecount_py")]
struct PyMultigraph {
    inner: Multigraph,
}

#[pymethods]
impl PyMultigraph {
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self { inner: Multigraph::new(vertices, edges).map_err(value_err)? })
    }

    /// Builds a named family member: `K5`, `C6`, `K4,4`, `K2,2,2`,
    /// `octahedron`, `petersen`, or a `+`-joined disjoint union.
    #[staticmethod]
    fn from_family(spec: &str) -> PyResult<Self> {
        Ok(Self { inner: Multigraph::from_family_spec(spec).map_err(value_err)? })
    }

    /// Decodes a graph6 string (simple graphs).
    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(Self { inner: Multigraph::from_graph6(text).map_err(value_err)? })
    }

    /// Parses a `n m` header followed by one `u v` edge per line.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(Self { inner: Multigraph::parse_edge_list(text).map_err(value_err)? })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn degree_sequence(&self) -> Vec<usize> {
        self.inner.degree_sequence().as_slice().to_vec()
    }

    #[getter]
    fn has_loops(&self) -> bool {
        self.inner.has_loops()
    }

    #[getter]
    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    #[getter]
    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite().is_bipartite()
    }

    /// Every vertex has even degree.
    #[getter]
    fn is_eulerian(&self) -> bool {
        self.inner.is_eulerian()
    }

    /// The common degree, or `None` for irregular graphs.
    #[getter]
    fn regular(&self) -> Option<usize> {
        self.inner.is_regular()
    }

    /// The disjoint union with another graph.
    fn disjoint_union(&self, other: &PyMultigraph) -> Self {
        Self { inner: self.inner.disjoint_union(&other.inner) }
    }

    fn __repr__(&self) -> String {
        format!(
            "Multigraph(vertices={}, edges={:?})",
            self.inner.vertex_count(),
            self.inner.edges()
        )
    }
}

/// Counts Eulerian orientations; `method` is `"evaluation"` (closed-form
/// subgraph sum) or `"brute-force"` (orientation enumeration).
#[pyfunction]
#[pyo3(signature = (g, method="evaluation", guard=counting::DEFAULT_GUARD_BITS, workers=1))]
fn count_eulerian(
    py: Python<'_>,
    g: &PyMultigraph,
    method: &str,
    guard: u32,
    workers: usize,
) -> PyResult<u64> {
    let graph = &g.inner;
    match method {
        "evaluation" => py.detach(|| counting::count_eulerian_eval(graph, guard, workers)),
        "brute-force" => py.detach(|| counting::count_eulerian_bruteforce(graph, guard, workers)),
        other => {
            return Err(value_err(format!(
                "unknown method `{other}`; use evaluation or brute-force"
            )))
        }
    }
    .map_err(value_err)
}

/// Counts half-graphs (spanning subgraphs with half the degree at every
/// vertex); `method` is `"evaluation"`, `"brute-force"`, or
/// `"krawtchouk"` (matrix-column route, regular graphs only).
#[pyfunction]
#[pyo3(signature = (g, method="evaluation", guard=counting::DEFAULT_GUARD_BITS, workers=1))]
fn count_half_graphs(
    py: Python<'_>,
    g: &PyMultigraph,
    method: &str,
    guard: u32,
    workers: usize,
) -> PyResult<u64> {
    let graph = &g.inner;
    match method {
        "evaluation" => py.detach(|| counting::count_half_graphs_eval(graph, guard, workers)),
        "brute-force" => {
            py.detach(|| counting::count_half_graphs_bruteforce(graph, guard, workers))
        }
        "krawtchouk" => py.detach(|| counting::count_half_graphs_krawtchouk(graph, guard, workers)),
        other => {
            return Err(value_err(format!(
                "unknown method `{other}`; use evaluation, brute-force or krawtchouk"
            )))
        }
    }
    .map_err(value_err)
}

/// Evaluates the subgraph sum `F_G` at per-vertex weight vectors (one
/// vector of length `degree+1` per vertex; entries are Fractions, ints, or
/// `(re, im)` pairs).  Returns the exact value as an `(re, im)` pair.
#[pyfunction]
#[pyo3(signature = (g, weights, guard=counting::DEFAULT_GUARD_BITS, workers=1))]
fn subgraph_sum(
    py: Python<'_>,
    g: &PyMultigraph,
    weights: Vec<Vec<WeightEntry>>,
    guard: u32,
    workers: usize,
) -> PyResult<(Rational, Rational)> {
    let w = weight_assignment(&g.inner, weights)?;
    let value = py
        .detach(|| counting::subgraph_poly_eval(&g.inner, &w, guard, workers))
        .map_err(value_err)?;
    Ok(gaussian_pair(&value))
}

/// Checks the subgraph-sum/orientation-sum duality at the given weights;
/// returns both sides and the equality flag.
#[pyfunction]
#[pyo3(signature = (g, weights, guard=counting::DUALITY_GUARD_BITS, workers=1))]
fn duality_check<'py>(
    py: Python<'py>,
    g: &PyMultigraph,
    weights: Vec<Vec<WeightEntry>>,
    guard: u32,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let w = weight_assignment(&g.inner, weights)?;
    let report = py
        .detach(|| counting::duality_check(&g.inner, &w, guard, workers))
        .map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("subgraph_side", gaussian_pair(&report.subgraph_side))?;
    out.set_item("orientation_side", gaussian_pair(&report.orientation_side))?;
    out.set_item("equal", report.equal)?;
    Ok(out)
}

/// The Eulerian count against the degree-product lower bound and its
/// doubled improvement.
#[pyfunction]
#[pyo3(signature = (g, guard=counting::DEFAULT_GUARD_BITS, workers=1))]
fn schrijver_report<'py>(
    py: Python<'py>,
    g: &PyMultigraph,
    guard: u32,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = py
        .detach(|| counting::schrijver_report(&g.inner, guard, workers))
        .map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("eulerian", report.eulerian)?;
    out.set_item("bound", report.bound)?;
    out.set_item("improved_bound", report.improved_bound)?;
    out.set_item("satisfied", report.satisfied)?;
    out.set_item("improved_satisfied", report.improved_satisfied)?;
    out.set_item("equality", report.equality)?;
    out.set_item("terms_nonnegative", report.terms_nonnegative)?;
    Ok(out)
}

/// Eulerian orientations versus half-graphs, each by two routes, plus the
/// bipartite dichotomy (the counts agree exactly iff the graph is
/// bipartite).
#[pyfunction]
#[pyo3(signature = (g, guard=counting::DEFAULT_GUARD_BITS, workers=1))]
fn dichotomy_report<'py>(
    py: Python<'py>,
    g: &PyMultigraph,
    guard: u32,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = py
        .detach(|| counting::eulerian_vs_halfgraphs(&g.inner, guard, workers))
        .map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("eulerian", report.eulerian)?;
    out.set_item("half_graphs", report.half_graphs)?;
    out.set_item("eulerian_routes_agree", report.eulerian_routes_agree)?;
    out.set_item("half_graph_routes_agree", report.half_graph_routes_agree)?;
    out.set_item("bipartite", report.bipartite)?;
    out.set_item("counts_equal", report.counts_equal)?;
    out.set_item("dichotomy_holds", report.dichotomy_holds)?;
    Ok(out)
}

/// Distribution of sources minus sinks over the uniform random
/// orientation of a connected cubic graph, with its exact closed form.
#[pyfunction]
#[pyo3(signature = (g, guard=counting::DEFAULT_GUARD_BITS, workers=1))]
fn cubic_distribution<'py>(
    py: Python<'py>,
    g: &PyMultigraph,
    guard: u32,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let dist = py
        .detach(|| counting::cubic_distribution(&g.inner, guard, workers))
        .map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("vertex_count", dist.vertex_count)?;
    out.set_item("total", dist.total)?;
    out.set_item("counts", dist.counts)?;
    out.set_item("probabilities", dist.probabilities)?;
    out.set_item("closed_form", dist.closed_form)?;
    out.set_item("matches", dist.matches)?;
    out.set_item("mean_zero", dist.mean_zero)?;
    Ok(out)
}

/// The τ-parameterized identity for a connected cubic graph: the weighted
/// orientation sum equals `2^(3n/2)·F_G(a,0,0,b)`, which collapses to
/// `aⁿ + bⁿ`.
#[pyfunction]
#[pyo3(signature = (g, tau, guard=counting::DEFAULT_GUARD_BITS, workers=1))]
fn cubic_identity<'py>(
    py: Python<'py>,
    g: &PyMultigraph,
    tau: ExactNumber,
    guard: u32,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let tau = tau.into_rational();
    let report = py
        .detach(|| counting::cubic_hg_identity_check(&g.inner, &tau, guard, workers))
        .map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("tau", report.tau)?;
    out.set_item("t", report.t)?;
    out.set_item("orientation_side", gaussian_pair(&report.orientation_side))?;
    out.set_item("subgraph_side", gaussian_pair(&report.subgraph_side))?;
    out.set_item("equal", report.equal)?;
    out.set_item("closed_form", gaussian_pair(&report.closed_form))?;
    out.set_item("closed_matches", report.closed_matches)?;
    Ok(out)
}

/// Runs seeded random gauge-invariance and composition trials on random
/// factor graphs; returns the failure tallies.
#[pyfunction]
#[pyo3(signature = (trials=200, seed=7))]
fn run_gauge_trials<'py>(py: Python<'py>, trials: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let summary = py.detach(|| trials::run_gauge_trials(trials, seed));
    let out = PyDict::new(py);
    out.set_item("trials", summary.trials)?;
    out.set_item("invariance_failures", summary.invariance_failures)?;
    out.set_item("composition_failures", summary.composition_failures)?;
    out.set_item("all_passed", summary.all_passed())?;
    Ok(out)
}

/// Runs seeded random duality trials on `g` (complex equality, plus
/// real-weight equality with an exactly vanishing imaginary part).
#[pyfunction]
#[pyo3(signature = (g, trials=20, seed=7, guard=counting::DUALITY_GUARD_BITS, workers=1))]
fn run_duality_trials<'py>(
    py: Python<'py>,
    g: &PyMultigraph,
    trials: usize,
    seed: u64,
    guard: u32,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let summary = py
        .detach(|| trials::run_duality_trials(&g.inner, trials, seed, guard, workers))
        .map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("trials", summary.trials)?;
    out.set_item("equality_failures", summary.equality_failures)?;
    out.set_item("imaginary_failures", summary.imaginary_failures)?;
    out.set_item("all_passed", summary.all_passed())?;
    if let Some(sample) = &summary.sample {
        let pair = PyDict::new(py);
        pair.set_item("subgraph_side", gaussian_pair(&sample.subgraph_side))?;
        pair.set_item("orientation_side", gaussian_pair(&sample.orientation_side))?;
        pair.set_item("equal", sample.equal)?;
        out.set_item("sample", pair)?;
    }
    Ok(out)
}

/// The evaluation vector making `F_G` count Eulerian orientations.
#[pyfunction]
fn s_vector(d: usize) -> PyResult<Vec<Rational>> {
    real_entries(&signatures::s_vector(d).map_err(value_err)?)
}

/// The alternating-sign evaluation vector counting half-graphs.
#[pyfunction]
fn c_vector(d: usize) -> PyResult<Vec<Rational>> {
    real_entries(&signatures::c_vector(d).map_err(value_err)?)
}

/// The rescaled kernel vector with unit leading entry.
#[pyfunction]
fn s_prime_vector(d: usize) -> PyResult<Vec<Rational>> {
    real_entries(&signatures::s_prime_vector(d).map_err(value_err)?)
}

/// The exact quarter-turn (Krawtchouk) matrix; even `d` only, since odd
/// `d` leaves a stray factor of `√2`.
#[pyfunction]
fn krawtchouk_matrix(d: usize) -> PyResult<Vec<Vec<Rational>>> {
    signatures::krawtchouk_matrix(d)
        .rational_entries()
        .ok_or_else(|| value_err("odd degree leaves irrational entries; use an even degree"))
}

/// The signed tridiagonal derivation matrix of size `(d+1)×(d+1)`.
#[pyfunction]
fn clement_matrix(d: usize) -> Vec<Vec<i64>> {
    signatures::clement_matrix(d)
}

#[pymodule]
fn gaugecount_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultigraph>()?;
    m.add_function(wrap_pyfunction!(count_eulerian, m)?)?;
    m.add_function(wrap_pyfunction!(count_half_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(subgraph_sum, m)?)?;
    m.add_function(wrap_pyfunction!(duality_check, m)?)?;
    m.add_function(wrap_pyfunction!(schrijver_report, m)?)?;
    m.add_function(wrap_pyfunction!(dichotomy_report, m)?)?;
    m.add_function(wrap_pyfunction!(cubic_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(cubic_identity, m)?)?;
    m.add_function(wrap_pyfunction!(run_gauge_trials, m)?)?;
    m.add_function(wrap_pyfunction!(run_duality_trials, m)?)?;
    m.add_function(wrap_pyfunction!(s_vector, m)?)?;
    m.add_function(wrap_pyfunction!(c_vector, m)?)?;
    m.add_function(wrap_pyfunction!(s_prime_vector, m)?)?;
    m.add_function(wrap_pyfunction!(krawtchouk_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(clement_matrix, m)?)?;
    m.add("DEFAULT_GUARD_BITS", counting::DEFAULT_GUARD_BITS)?;
    m.add("DUALITY_GUARD_BITS", counting::DUALITY_GUARD_BITS)?;
    Ok(())
}
