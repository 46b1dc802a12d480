//! Serializable summaries of counting runs.
//!
//! Every numeric field is rendered exactly: counts as decimal integer
//! strings, rationals as `p/q`, Gaussian rationals as `a+bi`.  Field order
//! is fixed by declaration, so JSON output is byte-deterministic.

use crate::counting::{
    CubicDistribution, CubicIdentityReport, DualityReport, EulerianHalfGraphReport,
    SchrijverReport,
};
use crate::exact::{format_gaussian, format_rational, Rational};
use crate::graph::Multigraph;
use serde::Serialize;

/// Renders a float with 17 significant digits (round-trip precision).
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Structural facts about the input graph.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
    pub degree_sequence: Vec<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub all_degrees_even: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<usize>,
}

impl GraphSummary {
    pub fn new(g: &Multigraph) -> Self {
        Self {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            loops: (0..g.edge_count()).filter(|&e| g.is_loop(e)).count(),
            degree_sequence: g.degree_sequence().as_slice().to_vec(),
            connected: g.is_connected(),
            bipartite: g.is_bipartite().is_bipartite(),
            all_degrees_even: g.is_eulerian(),
            regular: g.is_regular(),
        }
    }
}

/// The same count computed by independent routes (absent routes omitted).
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RouteValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub krawtchouk_column: Option<String>,
}

/// Lower bounds on the Eulerian count.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BoundValues {
    pub product_bound: String,
    pub improved_bound: String,
    pub satisfied: bool,
    pub improved_satisfied: bool,
    pub equality: bool,
    pub terms_nonnegative: bool,
}

/// Report for the counting verbs: a quantity, the routes that computed it,
/// and their agreement.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CountReport {
    pub graph: GraphSummary,
    pub quantity: String,
    pub method: String,
    pub values: RouteValues,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundValues>,
}

impl CountReport {
    pub fn eulerian(g: &Multigraph, evaluation: u64, brute_force: u64) -> Self {
        Self {
            graph: GraphSummary::new(g),
            quantity: "eulerian-orientations".to_owned(),
            method: "both".to_owned(),
            values: RouteValues {
                evaluation: Some(evaluation.to_string()),
                brute_force: Some(brute_force.to_string()),
                krawtchouk_column: None,
            },
            agreement: evaluation == brute_force,
            bounds: None,
        }
    }

    pub fn half_graphs(
        g: &Multigraph,
        evaluation: u64,
        brute_force: u64,
        krawtchouk_column: Option<u64>,
    ) -> Self {
        Self {
            graph: GraphSummary::new(g),
            quantity: "half-graphs".to_owned(),
            method: "both".to_owned(),
            values: RouteValues {
                evaluation: Some(evaluation.to_string()),
                brute_force: Some(brute_force.to_string()),
                krawtchouk_column: krawtchouk_column.map(|v| v.to_string()),
            },
            agreement: evaluation == brute_force
                && krawtchouk_column.is_none_or(|v| v == evaluation),
            bounds: None,
        }
    }

    pub fn schrijver(g: &Multigraph, report: &SchrijverReport) -> Self {
        Self {
            graph: GraphSummary::new(g),
            quantity: "eulerian-orientations".to_owned(),
            method: "evaluation".to_owned(),
            values: RouteValues {
                evaluation: Some(report.eulerian.to_string()),
                brute_force: None,
                krawtchouk_column: None,
            },
            agreement: report.satisfied && report.improved_satisfied,
            bounds: Some(BoundValues {
                product_bound: format_rational(&report.bound),
                improved_bound: format_rational(&report.improved_bound),
                satisfied: report.satisfied,
                improved_satisfied: report.improved_satisfied,
                equality: report.equality,
                terms_nonnegative: report.terms_nonnegative,
            }),
        }
    }
}

/// Report for the Eulerian-vs-half-graph dichotomy.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DichotomyReport {
    pub graph: GraphSummary,
    pub eulerian_orientations: String,
    pub half_graphs: String,
    pub eulerian_routes_agree: bool,
    pub half_graph_routes_agree: bool,
    pub bipartite: bool,
    pub counts_equal: bool,
    pub dichotomy_holds: bool,
}

impl DichotomyReport {
    pub fn new(g: &Multigraph, report: &EulerianHalfGraphReport) -> Self {
        Self {
            graph: GraphSummary::new(g),
            eulerian_orientations: report.eulerian.to_string(),
            half_graphs: report.half_graphs.to_string(),
            eulerian_routes_agree: report.eulerian_routes_agree,
            half_graph_routes_agree: report.half_graph_routes_agree,
            bipartite: report.bipartite,
            counts_equal: report.counts_equal,
            dichotomy_holds: report.dichotomy_holds,
        }
    }
}

/// One verified duality trial (both sides rendered exactly).
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DualityTrial {
    pub subgraph_side: String,
    pub orientation_side: String,
    pub equal: bool,
    pub imaginary_part_zero: bool,
}

impl DualityTrial {
    pub fn new(report: &DualityReport) -> Self {
        Self {
            subgraph_side: format_gaussian(&report.subgraph_side),
            orientation_side: format_gaussian(&report.orientation_side),
            equal: report.equal,
            imaginary_part_zero: num_traits::Zero::is_zero(&report.orientation_side.im),
        }
    }
}

/// Report for a batch of randomized duality trials on one graph.  Each
/// trial checks exact equality for a complex weight assignment and, for a
/// real one, additionally that the orientation side has zero imaginary
/// part.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DualityBatchReport {
    pub graph: GraphSummary,
    pub trials: usize,
    pub equality_failures: usize,
    pub imaginary_failures: usize,
    pub all_passed: bool,
    pub sample: DualityTrial,
}

/// Report for a batch of randomized gauge-invariance trials.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GaugeBatchReport {
    pub trials: usize,
    pub invariance_failures: usize,
    pub composition_failures: usize,
    pub all_passed: bool,
}

/// An exactly rendered matrix or coefficient vector.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MatrixReport {
    pub name: String,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle: Option<String>,
    /// Oriented degree `k` for the `Q_(k)` coefficient row.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oriented_degree: Option<i64>,
    /// Exponent `e` such that the exact matrix is `(√2)^e` times the
    /// integer matrix below (π/4 rotations only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt2_exponent: Option<i64>,
    pub entries: Vec<Vec<String>>,
}

/// One row of the cubic source/sink distribution table.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DistributionRow {
    pub k: i64,
    pub count: String,
    pub probability: String,
    pub closed_form: String,
}

/// Report for the cubic source/sink distribution.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DistributionReport {
    pub graph: GraphSummary,
    pub orientations: String,
    pub rows: Vec<DistributionRow>,
    pub matches_closed_form: bool,
    pub mean_zero: bool,
}

impl DistributionReport {
    pub fn new(g: &Multigraph, dist: &CubicDistribution) -> Self {
        let rows = dist
            .counts
            .iter()
            .zip(&dist.probabilities)
            .zip(&dist.closed_form)
            .map(|((&(k, count), (_, p)), (_, f))| DistributionRow {
                k,
                count: count.to_string(),
                probability: format_rational(p),
                closed_form: format_rational(f),
            })
            .collect();
        Self {
            graph: GraphSummary::new(g),
            orientations: dist.total.to_string(),
            rows,
            matches_closed_form: dist.matches,
            mean_zero: dist.mean_zero,
        }
    }
}

/// Report for the cubic τ-identity.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub graph: GraphSummary,
    pub tau: String,
    pub t: String,
    pub orientation_side: String,
    pub subgraph_side: String,
    pub equal: bool,
    pub closed_form: String,
    pub closed_form_matches: bool,
}

impl IdentityReport {
    pub fn new(g: &Multigraph, report: &CubicIdentityReport) -> Self {
        Self {
            graph: GraphSummary::new(g),
            tau: format_rational(&report.tau),
            t: format_rational(&report.t),
            orientation_side: format_gaussian(&report.orientation_side),
            subgraph_side: format_gaussian(&report.subgraph_side),
            equal: report.equal,
            closed_form: format_gaussian(&report.closed_form),
            closed_form_matches: report.closed_matches,
        }
    }
}

/// Renders a rational matrix (or a single row) as exact strings.
pub fn rational_rows_to_strings(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}
