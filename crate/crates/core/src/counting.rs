//! Counting Eulerian orientations, half-graphs and weighted subgraph sums,
//! each by (at least) two independent routes.
//!
//! The weighted subgraph sum of a multigraph `G` with per-vertex signature
//! vectors `x^v` is
//!
//! ```text
//! F_G(x) = Σ_{A ⊆ E} Π_v x^v_{d_A(v)}
//! ```
//!
//! and its orientation twin sums, over all `2^m` edge orientations, the
//! product of per-vertex weights indexed by oriented degree (out minus in).
//! The two are linked by an exact duality: `F_G(x)` equals `2^{-m}` times
//! the orientation sum of the `Q`-form evaluations of `x`.  Specialising the
//! duality produces the closed-form counts: the subgraph sum at the
//! [`s_vector`](crate::signatures::s_vector)s counts Eulerian orientations,
//! and at the [`c_vector`](crate::signatures::c_vector)s counts half-graphs
//! (spanning subgraphs taking exactly half of each vertex's degree).
//!
//! Every enumeration walks masks in Gray-code order, so a single edge flips
//! per step and all per-vertex state updates in O(1).  Exact routes clear
//! denominators once and run the hot loop over Gaussian integers.

use crate::enumerate::{clear_denominators, divide_gauss, run_blocks, walk, GaussInt};
use crate::exact::{binomial, pow2, real, GaussianRational, Rational};
use crate::graph::Multigraph;
use crate::signatures::{
    c_vector, krawtchouk_matrix, q_coefficients, s_vector, SignatureError, SignatureVector,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default ceiling on enumeration size: at most `2^30` states.
pub const DEFAULT_GUARD_BITS: u32 = 30;

/// Stricter default for [`duality_check`], which enumerates both sides.
pub const DUALITY_GUARD_BITS: u32 = 20;

/// Errors from the counting operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("{edges} edges exceed the enumeration guard of 2^{guard_bits} states (raise the guard to proceed)")]
    TooManyEdges { edges: usize, guard_bits: u32 },
    #[error("edge {edge} is a loop; orientation-based counts require loop-free graphs")]
    LoopsUnsupported { edge: usize },
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: usize, degree: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not 3-regular")]
    NotCubic,
    #[error("graph is not connected")]
    NotConnected,
    #[error("expected {expected} weight vectors, found {found}")]
    WrongWeightCount { expected: usize, found: usize },
    #[error("vertex {vertex}: weight vector has degree {found}, vertex has degree {expected}")]
    WeightDegreeMismatch { vertex: usize, expected: usize, found: usize },
    #[error("tau must be nonzero")]
    ZeroTau,
    #[error("closed-form evaluation produced a non-count value {value}")]
    NonIntegerCount { value: String },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

// ======================================================================
// Weights
// ======================================================================

/// One signature vector per vertex, the argument of the subgraph sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    vectors: Vec<SignatureVector>,
}

impl WeightAssignment {
    /// Builds an assignment for `g`, checking one vector per vertex with
    /// degree matching the vertex degree.
    pub fn new(g: &Multigraph, vectors: Vec<SignatureVector>) -> Result<Self, CountError> {
        let assignment = Self { vectors };
        assignment.validate(g)?;
        Ok(assignment)
    }

    fn validate(&self, g: &Multigraph) -> Result<(), CountError> {
        if self.vectors.len() != g.vertex_count() {
            return Err(CountError::WrongWeightCount {
                expected: g.vertex_count(),
                found: self.vectors.len(),
            });
        }
        for (vertex, x) in self.vectors.iter().enumerate() {
            if x.degree() != g.degree(vertex) {
                return Err(CountError::WeightDegreeMismatch {
                    vertex,
                    expected: g.degree(vertex),
                    found: x.degree(),
                });
            }
        }
        Ok(())
    }

    /// Builds an assignment from a per-degree rule (e.g. "the kernel vector
    /// of this vertex's degree").
    pub fn from_degree_rule(
        g: &Multigraph,
        mut rule: impl FnMut(usize) -> Result<SignatureVector, SignatureError>,
    ) -> Result<Self, CountError> {
        let vectors = (0..g.vertex_count())
            .map(|v| rule(g.degree(v)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, vectors)
    }

    pub fn vectors(&self) -> &[SignatureVector] {
        &self.vectors
    }

    pub fn vector(&self, v: usize) -> &SignatureVector {
        &self.vectors[v]
    }
}

/// Per-vertex weights for orientation sums: entry `j` of vertex `v` is the
/// weight of oriented degree `2j − deg(v)` (i.e. out-degree `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationWeights {
    per_vertex: Vec<Vec<GaussianRational>>,
}

impl OrientationWeights {
    /// Builds weights by evaluating `rule(v, k)` at every oriented degree
    /// `k ∈ {-d, -d+2, …, d}` of every vertex.
    pub fn from_rule(
        g: &Multigraph,
        mut rule: impl FnMut(usize, i64) -> GaussianRational,
    ) -> Self {
        let per_vertex = (0..g.vertex_count())
            .map(|v| {
                let d = g.degree(v) as i64;
                (0..=d).map(|j| rule(v, 2 * j - d)).collect()
            })
            .collect();
        Self { per_vertex }
    }

    /// The duality right-hand weights for `w`: vertex `v` at oriented degree
    /// `k` gets `Q_(k)` (of degree `deg(v)`) evaluated at `w_v`.
    pub fn from_q_evaluations(
        g: &Multigraph,
        w: &WeightAssignment,
    ) -> Result<Self, CountError> {
        let mut per_vertex = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let d = g.degree(v);
            let x = w.vector(v);
            let row = (0..=d)
                .map(|j| {
                    let k = 2 * j as i64 - d as i64;
                    q_coefficients(d, k)?.evaluate(x)
                })
                .collect::<Result<Vec<_>, _>>()?;
            per_vertex.push(row);
        }
        Ok(Self { per_vertex })
    }

    pub fn rows(&self) -> &[Vec<GaussianRational>] {
        &self.per_vertex
    }

    fn validate(&self, g: &Multigraph) -> Result<(), CountError> {
        if self.per_vertex.len() != g.vertex_count() {
            return Err(CountError::WrongWeightCount {
                expected: g.vertex_count(),
                found: self.per_vertex.len(),
            });
        }
        for (vertex, row) in self.per_vertex.iter().enumerate() {
            if row.len() != g.degree(vertex) + 1 {
                return Err(CountError::WeightDegreeMismatch {
                    vertex,
                    expected: g.degree(vertex),
                    found: row.len().saturating_sub(1),
                });
            }
        }
        Ok(())
    }
}

/// An orientation of a loop-free multigraph as a bitmask over edge indices:
/// bit `e` clear means edge `e` keeps its stored direction `u → v`, set
/// means it is flipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orientation {
    mask: u64,
    edge_count: usize,
}

impl Orientation {
    pub fn from_mask(mask: u64, edge_count: usize) -> Self {
        assert!(edge_count <= 62, "orientation masks support at most 62 edges");
        Self { mask, edge_count }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_flipped(&self, e: usize) -> bool {
        debug_assert!(e < self.edge_count);
        self.mask & (1 << e) != 0
    }

    /// Oriented degrees (out minus in) under this orientation.
    /// Panics if the graph has loops.
    pub fn oriented_degrees(&self, g: &Multigraph) -> Vec<i64> {
        assert!(!g.has_loops(), "orientations are defined for loop-free graphs");
        assert_eq!(g.edge_count(), self.edge_count);
        let mut deg = vec![0i64; g.vertex_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let (tail, head) = if self.is_flipped(e) { (v, u) } else { (u, v) };
            deg[tail] += 1;
            deg[head] -= 1;
        }
        deg
    }
}

// ======================================================================
// Guard and shared kernel state
// ======================================================================

fn check_guard(g: &Multigraph, guard_bits: u32) -> Result<(), CountError> {
    let m = g.edge_count();
    if m as u32 > guard_bits.min(62) {
        return Err(CountError::TooManyEdges { edges: m, guard_bits });
    }
    Ok(())
}

fn check_loop_free(g: &Multigraph) -> Result<(), CountError> {
    if let Some(edge) = (0..g.edge_count()).find(|&e| g.is_loop(e)) {
        return Err(CountError::LoopsUnsupported { edge });
    }
    Ok(())
}

fn check_even_degrees(g: &Multigraph) -> Result<(), CountError> {
    for (vertex, &degree) in g.degree_sequence().as_slice().iter().enumerate() {
        if degree % 2 != 0 {
            return Err(CountError::OddDegree { vertex, degree });
        }
    }
    Ok(())
}

/// Subgraph degrees of every vertex under the subset `mask`.
fn subset_indices(g: &Multigraph, mask: u64) -> Vec<usize> {
    let mut idx = vec![0usize; g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if mask & (1 << e) != 0 {
            idx[u] += 1;
            idx[v] += 1;
        }
    }
    idx
}

/// Out-degrees of every vertex under the orientation `mask` (bit set =
/// stored direction flipped).
fn orientation_indices(g: &Multigraph, mask: u64) -> Vec<usize> {
    let mut idx = vec![0usize; g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let tail = if mask & (1 << e) != 0 { v } else { u };
        idx[tail] += 1;
    }
    idx
}

// ======================================================================
// Exact weighted sums
// ======================================================================

/// Moves one vertex index by `delta`, keeping the count of vertices whose
/// index is currently penalized (zero weight, or off-target) up to date.
fn shift_index(
    idx: &mut [usize],
    penalized: &impl Fn(usize, usize) -> bool,
    penalties: &mut usize,
    vertex: usize,
    delta: isize,
) {
    *penalties -= usize::from(penalized(vertex, idx[vertex]));
    idx[vertex] = idx[vertex].wrapping_add_signed(delta);
    *penalties += usize::from(penalized(vertex, idx[vertex]));
}

fn count_penalties(idx: &[usize], penalized: &impl Fn(usize, usize) -> bool) -> usize {
    idx.iter().enumerate().filter(|&(v, &j)| penalized(v, j)).count()
}

/// Applies one Gray-code edge toggle to the per-vertex indices.  Subset
/// membership moves both endpoints together (+1/+1, a loop +2); an
/// orientation flip moves one unit of out-degree from tail to head (−1/+1).
fn apply_toggle(
    edges: &[(usize, usize)],
    orientations: bool,
    idx: &mut [usize],
    penalized: &impl Fn(usize, usize) -> bool,
    penalties: &mut usize,
    edge: usize,
    set: bool,
) {
    let (u, v) = edges[edge];
    if orientations {
        let (from, to) = if set { (u, v) } else { (v, u) };
        shift_index(idx, penalized, penalties, from, -1);
        shift_index(idx, penalized, penalties, to, 1);
    } else if u == v {
        shift_index(idx, penalized, penalties, u, if set { 2 } else { -2 });
    } else {
        let delta = if set { 1 } else { -1 };
        shift_index(idx, penalized, penalties, u, delta);
        shift_index(idx, penalized, penalties, v, delta);
    }
}

/// Shared Gray-code weighted sum over one block of masks.  Products touch
/// big integers only when no factor is zero; a zero-factor count is
/// maintained in O(1) per step instead.
fn weighted_sum_kernel(
    g: &Multigraph,
    tables: &[Vec<GaussInt>],
    orientations: bool,
    lo: u64,
    hi: u64,
) -> GaussInt {
    let zeros: Vec<Vec<bool>> = tables
        .iter()
        .map(|row| row.iter().map(Zero::is_zero).collect())
        .collect();
    let penalized = |v: usize, j: usize| zeros[v][j];
    let edges = g.edges();
    let state = walk(
        g.edge_count(),
        lo,
        hi,
        |mask| {
            let idx = if orientations {
                orientation_indices(g, mask)
            } else {
                subset_indices(g, mask)
            };
            let penalties = count_penalties(&idx, &penalized);
            (idx, penalties, GaussInt::zero())
        },
        |(idx, penalties, _), edge, set| {
            apply_toggle(edges, orientations, idx, &penalized, penalties, edge, set);
        },
        |(idx, penalties, sum)| {
            if *penalties == 0 {
                let mut product = GaussInt::one();
                for (v, &j) in idx.iter().enumerate() {
                    product *= &tables[v][j];
                }
                *sum += product;
            }
        },
    );
    state.2
}

/// Clears denominators of per-vertex weight rows and runs the blocked
/// Gray-code sum, dividing the common denominator back out at the end.
fn weighted_sum(
    g: &Multigraph,
    rows: &[Vec<GaussianRational>],
    orientations: bool,
    workers: usize,
) -> GaussianRational {
    let mut tables = Vec::with_capacity(rows.len());
    let mut denominator = BigInt::one();
    for row in rows {
        let (scaled, den) = clear_denominators(row);
        tables.push(scaled);
        denominator *= den;
    }
    let total = 1u64 << g.edge_count();
    let sum = run_blocks(
        total,
        workers,
        |lo, hi| weighted_sum_kernel(g, &tables, orientations, lo, hi),
        |a, b| a + b,
    )
    .unwrap_or_else(GaussInt::zero);
    divide_gauss(&sum, &denominator)
}

/// The exact weighted subgraph sum `F_G(w) = Σ_{A⊆E} Π_v w^v_{d_A(v)}`.
/// Loops are supported (a loop adds 2 to its endpoint's subgraph degree).
pub fn subgraph_poly_eval(
    g: &Multigraph,
    w: &WeightAssignment,
    guard_bits: u32,
    workers: usize,
) -> Result<GaussianRational, CountError> {
    check_guard(g, guard_bits)?;
    w.validate(g)?;
    let rows: Vec<Vec<GaussianRational>> =
        w.vectors().iter().map(|x| x.entries().to_vec()).collect();
    Ok(weighted_sum(g, &rows, false, workers))
}

/// The exact orientation sum `Σ_O Π_v y^v(d_O(v))` over all `2^m`
/// orientations.  Requires a loop-free graph.
pub fn orientation_sum(
    g: &Multigraph,
    y: &OrientationWeights,
    guard_bits: u32,
    workers: usize,
) -> Result<GaussianRational, CountError> {
    check_guard(g, guard_bits)?;
    check_loop_free(g)?;
    y.validate(g)?;
    Ok(weighted_sum(g, y.rows(), true, workers))
}

/// Floating-point weighted subgraph sum (same Gray-code walk, `f64`
/// arithmetic) for the opt-in float pathway.
pub fn subgraph_poly_eval_f64(
    g: &Multigraph,
    rows: &[Vec<f64>],
    guard_bits: u32,
    workers: usize,
) -> Result<f64, CountError> {
    check_guard(g, guard_bits)?;
    if rows.len() != g.vertex_count() {
        return Err(CountError::WrongWeightCount {
            expected: g.vertex_count(),
            found: rows.len(),
        });
    }
    for (vertex, row) in rows.iter().enumerate() {
        if row.len() != g.degree(vertex) + 1 {
            return Err(CountError::WeightDegreeMismatch {
                vertex,
                expected: g.degree(vertex),
                found: row.len().saturating_sub(1),
            });
        }
    }
    let total = 1u64 << g.edge_count();
    let edges = g.edges();
    let unpenalized = |_: usize, _: usize| false;
    let sum = run_blocks(
        total,
        workers,
        |lo, hi| {
            let state = walk(
                g.edge_count(),
                lo,
                hi,
                |mask| (subset_indices(g, mask), 0usize, 0.0f64),
                |(idx, penalties, _), edge, set| {
                    apply_toggle(edges, false, idx, &unpenalized, penalties, edge, set);
                },
                |(idx, _, sum)| {
                    let mut product = 1.0f64;
                    for (v, &j) in idx.iter().enumerate() {
                        product *= rows[v][j];
                    }
                    *sum += product;
                },
            );
            state.2
        },
        |a, b| a + b,
    )
    .unwrap_or(0.0);
    Ok(sum)
}

// ======================================================================
// Indicator counts (violation counting, no arithmetic in the loop)
// ======================================================================

/// Counts masks whose per-vertex indices all hit `target`, maintaining only
/// the number of off-target vertices per step.
fn count_matching_kernel(
    g: &Multigraph,
    target: &[usize],
    orientations: bool,
    lo: u64,
    hi: u64,
) -> u64 {
    let penalized = |v: usize, j: usize| j != target[v];
    let edges = g.edges();
    let state = walk(
        g.edge_count(),
        lo,
        hi,
        |mask| {
            let idx = if orientations {
                orientation_indices(g, mask)
            } else {
                subset_indices(g, mask)
            };
            let penalties = count_penalties(&idx, &penalized);
            (idx, penalties, 0u64)
        },
        |(idx, penalties, _), edge, set| {
            apply_toggle(edges, orientations, idx, &penalized, penalties, edge, set);
        },
        |(_, penalties, count)| *count += u64::from(*penalties == 0),
    );
    state.2
}

fn count_matching(
    g: &Multigraph,
    target: &[usize],
    orientations: bool,
    workers: usize,
) -> u64 {
    let total = 1u64 << g.edge_count();
    run_blocks(
        total,
        workers,
        |lo, hi| count_matching_kernel(g, target, orientations, lo, hi),
        |a, b| a + b,
    )
    .unwrap_or(0)
}

/// Extracts a nonnegative integer from an exact evaluation result.
fn expect_count(value: &GaussianRational) -> Result<u64, CountError> {
    let fail = || CountError::NonIntegerCount {
        value: crate::exact::format_gaussian(value),
    };
    if !value.im.is_zero() || !value.re.is_integer() || value.re.is_negative() {
        return Err(fail());
    }
    value.re.to_integer().to_u64().ok_or_else(fail)
}

// ======================================================================
// Eulerian orientations
// ======================================================================

/// Counts Eulerian orientations (every vertex with oriented degree zero) by
/// enumerating all `2^m` orientations.
pub fn count_eulerian_bruteforce(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<u64, CountError> {
    check_guard(g, guard_bits)?;
    check_loop_free(g)?;
    check_even_degrees(g)?;
    let target: Vec<usize> = g.degree_sequence().as_slice().iter().map(|d| d / 2).collect();
    Ok(count_matching(g, &target, true, workers))
}

/// Counts Eulerian orientations in closed form: the subgraph sum evaluated
/// at the kernel vector of each vertex's degree.
pub fn count_eulerian_eval(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<u64, CountError> {
    check_guard(g, guard_bits)?;
    check_loop_free(g)?;
    check_even_degrees(g)?;
    let w = WeightAssignment::from_degree_rule(g, s_vector)?;
    let value = subgraph_poly_eval(g, &w, guard_bits, workers)?;
    expect_count(&value)
}

// ======================================================================
// Half-graphs
// ======================================================================

/// Counts half-graphs (spanning subgraphs with `d_A(v) = deg(v)/2`
/// everywhere) by enumerating all `2^m` edge subsets.
pub fn count_half_graphs_bruteforce(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<u64, CountError> {
    check_guard(g, guard_bits)?;
    check_loop_free(g)?;
    check_even_degrees(g)?;
    let target: Vec<usize> = g.degree_sequence().as_slice().iter().map(|d| d / 2).collect();
    Ok(count_matching(g, &target, false, workers))
}

/// Counts half-graphs in closed form: the subgraph sum at the alternating
/// vectors.
pub fn count_half_graphs_eval(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<u64, CountError> {
    check_guard(g, guard_bits)?;
    check_loop_free(g)?;
    check_even_degrees(g)?;
    let w = WeightAssignment::from_degree_rule(g, c_vector)?;
    let value = subgraph_poly_eval(g, &w, guard_bits, workers)?;
    expect_count(&value)
}

/// Counts half-graphs of a regular graph via the middle column of the
/// `π/4` rotation matrix — an independent derivation of the same
/// evaluation point.
pub fn count_half_graphs_krawtchouk(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<u64, CountError> {
    check_guard(g, guard_bits)?;
    check_loop_free(g)?;
    check_even_degrees(g)?;
    if g.vertex_count() == 0 {
        return Ok(1);
    }
    let d = g.is_regular().ok_or(CountError::NotRegular)?;
    let column = krawtchouk_matrix(d)
        .rational_column(d / 2)
        .expect("even degree gives rational entries");
    let x = SignatureVector::from_rationals(column);
    let w = WeightAssignment::new(g, vec![x; g.vertex_count()])?;
    let value = subgraph_poly_eval(g, &w, guard_bits, workers)?;
    expect_count(&value)
}

// ======================================================================
// Duality check
// ======================================================================

/// Both sides of the subgraph/orientation duality, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// `F_G(w)`, the subgraph-sum side.
    pub subgraph_side: GaussianRational,
    /// `2^{-m} Σ_O Π_v Q_(d_O(v))(w_v)`, the orientation side.
    pub orientation_side: GaussianRational,
    pub equal: bool,
}

/// Evaluates both sides of the duality for the given weights.  Enumerates
/// `2^m` twice, so the default guard is stricter ([`DUALITY_GUARD_BITS`]).
pub fn duality_check(
    g: &Multigraph,
    w: &WeightAssignment,
    guard_bits: u32,
    workers: usize,
) -> Result<DualityReport, CountError> {
    check_guard(g, guard_bits)?;
    check_loop_free(g)?;
    let subgraph_side = subgraph_poly_eval(g, w, guard_bits, workers)?;
    let y = OrientationWeights::from_q_evaluations(g, w)?;
    let raw = orientation_sum(g, &y, guard_bits, workers)?;
    let orientation_side = raw * real(pow2(-(g.edge_count() as i64)));
    let equal = subgraph_side == orientation_side;
    Ok(DualityReport { subgraph_side, orientation_side, equal })
}

// ======================================================================
// Lower bounds on the Eulerian count
// ======================================================================

/// The Eulerian orientation count against its degree-product lower bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchrijverReport {
    pub eulerian: u64,
    /// `Π_v C(d_v, d_v/2) / 2^{d_v/2}`.
    pub bound: Rational,
    /// Twice [`SchrijverReport::bound`] — attained with equality by even
    /// cycles.
    pub improved_bound: Rational,
    pub satisfied: bool,
    pub improved_satisfied: bool,
    pub equality: bool,
    /// The evaluation vectors have no negative entries, so every subset's
    /// term in the evaluated sum is nonnegative (the source of the bound:
    /// the empty and full subsets each contribute exactly the product
    /// bound).
    pub terms_nonnegative: bool,
}

/// Computes the Eulerian count (closed form) and checks it against the
/// product lower bound and its doubled improvement.
pub fn schrijver_report(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<SchrijverReport, CountError> {
    let eulerian = count_eulerian_eval(g, guard_bits, workers)?;
    let mut bound = Rational::one();
    let mut terms_nonnegative = true;
    for &d in g.degree_sequence().as_slice() {
        bound *= Rational::new(binomial(d as u64, d as u64 / 2), BigInt::one() << (d / 2));
        terms_nonnegative &= s_vector(d)?
            .entries()
            .iter()
            .all(|e| !e.re.is_negative() && e.im.is_zero());
    }
    let improved_bound = &bound * Rational::from_integer(2.into());
    let count = Rational::from_integer(eulerian.into());
    Ok(SchrijverReport {
        eulerian,
        satisfied: count >= bound,
        improved_satisfied: count >= improved_bound,
        equality: count == improved_bound,
        bound,
        improved_bound,
        terms_nonnegative,
    })
}

/// Eulerian orientations versus half-graphs: the counts, each computed by
/// both routes, and the bipartite dichotomy (`ε = h` exactly for bipartite
/// graphs, `ε > h` otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianHalfGraphReport {
    pub eulerian: u64,
    pub half_graphs: u64,
    pub eulerian_routes_agree: bool,
    pub half_graph_routes_agree: bool,
    pub bipartite: bool,
    pub counts_equal: bool,
    /// `counts_equal ⇔ bipartite`.
    pub dichotomy_holds: bool,
}

pub fn eulerian_vs_halfgraphs(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<EulerianHalfGraphReport, CountError> {
    let eulerian = count_eulerian_eval(g, guard_bits, workers)?;
    let eulerian_brute = count_eulerian_bruteforce(g, guard_bits, workers)?;
    let half_graphs = count_half_graphs_eval(g, guard_bits, workers)?;
    let half_brute = count_half_graphs_bruteforce(g, guard_bits, workers)?;
    let bipartite = g.is_bipartite().is_bipartite();
    let counts_equal = eulerian == half_graphs;
    Ok(EulerianHalfGraphReport {
        eulerian,
        half_graphs,
        eulerian_routes_agree: eulerian == eulerian_brute,
        half_graph_routes_agree: half_graphs == half_brute,
        bipartite,
        counts_equal,
        dichotomy_holds: counts_equal == bipartite,
    })
}

// ======================================================================
// Cubic graphs: the source/sink statistic and the τ-identity
// ======================================================================

/// Distribution of `n₊ − n₋` (sources minus sinks) over the uniform random
/// orientation of a connected cubic graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicDistribution {
    pub vertex_count: usize,
    /// Total number of orientations, `2^m`.
    pub total: u64,
    /// `(k, #orientations with n₊ − n₋ = k)` for every `k` with a nonzero
    /// count or a nonzero closed-form probability.
    pub counts: Vec<(i64, u64)>,
    /// Enumerated probabilities `count / 2^m`.
    pub probabilities: Vec<(i64, Rational)>,
    /// Closed form `C(n, n/2 − 2k) / 2^{n-1}` (zero outside its support).
    pub closed_form: Vec<(i64, Rational)>,
    /// Enumerated probabilities equal the closed form at every `k`.
    pub matches: bool,
    /// `Σ_k k · count(k) = 0` (sources and sinks balance on average).
    pub mean_zero: bool,
}

fn check_cubic_connected(g: &Multigraph) -> Result<(), CountError> {
    check_loop_free(g)?;
    if g.is_regular() != Some(3) {
        return Err(CountError::NotCubic);
    }
    if !g.is_connected() {
        return Err(CountError::NotConnected);
    }
    Ok(())
}

pub fn cubic_distribution(
    g: &Multigraph,
    guard_bits: u32,
    workers: usize,
) -> Result<CubicDistribution, CountError> {
    check_guard(g, guard_bits)?;
    check_cubic_connected(g)?;
    let n = g.vertex_count();
    let edges = g.edges();
    let total = 1u64 << g.edge_count();

    // Histogram of n₊ − n₋, index shifted by +n.
    struct Walker {
        idx: Vec<usize>,
        sources: usize, // vertices of out-degree 3
        sinks: usize,   // vertices of out-degree 0
        hist: Vec<u64>,
    }
    let histogram = run_blocks(
        total,
        workers,
        |lo, hi| {
            let state = walk(
                g.edge_count(),
                lo,
                hi,
                |mask| {
                    let idx = orientation_indices(g, mask);
                    Walker {
                        sources: idx.iter().filter(|&&j| j == 3).count(),
                        sinks: idx.iter().filter(|&&j| j == 0).count(),
                        hist: vec![0u64; 2 * n + 1],
                        idx,
                    }
                },
                |s, edge, set| {
                    let (u, v) = edges[edge];
                    let (from, to) = if set { (u, v) } else { (v, u) };
                    s.sources -= usize::from(s.idx[from] == 3);
                    s.sinks -= usize::from(s.idx[to] == 0);
                    s.idx[from] -= 1;
                    s.idx[to] += 1;
                    s.sinks += usize::from(s.idx[from] == 0);
                    s.sources += usize::from(s.idx[to] == 3);
                },
                |s| s.hist[n + s.sources - s.sinks] += 1,
            );
            state.hist
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
    .unwrap_or_else(|| vec![0u64; 2 * n + 1]);

    let closed = |k: i64| -> Rational {
        let upper = n as i64 / 2 - 2 * k;
        if upper < 0 || upper > n as i64 {
            return Rational::zero();
        }
        Rational::new(binomial(n as u64, upper as u64), BigInt::one() << (n - 1))
    };

    let mut counts = Vec::new();
    let mut probabilities = Vec::new();
    let mut closed_form = Vec::new();
    let mut matches = true;
    for k in -(n as i64)..=n as i64 {
        let count = histogram[(k + n as i64) as usize];
        let formula = closed(k);
        if count == 0 && formula.is_zero() {
            continue;
        }
        let probability = Rational::new(count.into(), total.into());
        matches &= probability == formula;
        counts.push((k, count));
        probabilities.push((k, probability));
        closed_form.push((k, formula));
    }
    let mean: i64 = counts.iter().map(|&(k, c)| k * c as i64).sum();
    Ok(CubicDistribution {
        vertex_count: n,
        total,
        counts,
        probabilities,
        closed_form,
        matches,
        mean_zero: mean == 0,
    })
}

/// Both sides of the cubic τ-identity, plus the two-term closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicIdentityReport {
    pub tau: Rational,
    /// `t = τ⁴`.
    pub t: Rational,
    /// `H = Σ_O Π_v y(d_O(v))` with `y(±3) = t^{±1}`, `y(±1) = 1`.
    pub orientation_side: GaussianRational,
    /// `2^{3n/2} · F_G(a, 0, 0, b)` with `a = (τ + 1/τ)/2`,
    /// `b = (i/2)(τ − 1/τ)`.
    pub subgraph_side: GaussianRational,
    pub equal: bool,
    /// For a connected cubic graph, `F_G(a, 0, 0, b) = aⁿ + bⁿ`.
    pub closed_form: GaussianRational,
    pub closed_matches: bool,
}

pub fn cubic_hg_identity_check(
    g: &Multigraph,
    tau: &Rational,
    guard_bits: u32,
    workers: usize,
) -> Result<CubicIdentityReport, CountError> {
    check_guard(g, guard_bits)?;
    check_cubic_connected(g)?;
    if tau.is_zero() {
        return Err(CountError::ZeroTau);
    }
    let n = g.vertex_count();
    let t = tau * tau * tau * tau;
    let t_inv = Rational::one() / &t;
    let tau_inv = Rational::one() / tau;
    let half = Rational::new(1.into(), 2.into());
    let a = real((tau + &tau_inv) * &half);
    let b = GaussianRational::new(Rational::zero(), (tau - &tau_inv) * &half);

    let y = OrientationWeights::from_rule(g, |_, k| match k {
        -3 => real(t_inv.clone()),
        3 => real(t.clone()),
        _ => GaussianRational::one(),
    });
    let orientation_side = orientation_sum(g, &y, guard_bits, workers)?;

    let x = SignatureVector::new(vec![
        a.clone(),
        GaussianRational::zero(),
        GaussianRational::zero(),
        b.clone(),
    ]);
    let w = WeightAssignment::new(g, vec![x; n])?;
    let f = subgraph_poly_eval(g, &w, guard_bits, workers)?;
    let subgraph_side = &f * real(pow2(3 * n as i64 / 2));

    let power = |z: &GaussianRational| {
        let mut acc = GaussianRational::one();
        for _ in 0..n {
            acc *= z;
        }
        acc
    };
    let closed_form = power(&a) + power(&b);
    Ok(CubicIdentityReport {
        tau: tau.clone(),
        t,
        equal: orientation_side == subgraph_side,
        closed_matches: f == closed_form,
        orientation_side,
        subgraph_side,
        closed_form,
    })
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gauss, gauss_ints, rational};
    use proptest::prelude::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        gauss_ints(re, im)
    }

    fn family(spec: &str) -> Multigraph {
        Multigraph::from_family_spec(spec).unwrap()
    }

    fn uniform_weights(g: &Multigraph, entries: &[(i64, i64)]) -> WeightAssignment {
        let x = SignatureVector::new(
            entries.iter().map(|&(n, d)| real(rational(n, d))).collect(),
        );
        WeightAssignment::new(g, vec![x; g.vertex_count()]).unwrap()
    }

    /// Slow, independent subgraph sum: iterate subsets directly, recompute
    /// every degree from scratch.
    fn subgraph_sum_oracle(g: &Multigraph, w: &WeightAssignment) -> GaussianRational {
        let mut sum = GaussianRational::zero();
        for mask in 0..(1u64 << g.edge_count()) {
            let mut product = GaussianRational::one();
            for (v, j) in subset_indices(g, mask).into_iter().enumerate() {
                product *= w.vector(v).get(j);
            }
            sum += product;
        }
        sum
    }

    /// Slow, independent orientation sum via the public `Orientation` type.
    fn orientation_sum_oracle(g: &Multigraph, y: &OrientationWeights) -> GaussianRational {
        let mut sum = GaussianRational::zero();
        for mask in 0..(1u64 << g.edge_count()) {
            let orientation = Orientation::from_mask(mask, g.edge_count());
            let mut product = GaussianRational::one();
            for (v, k) in orientation.oriented_degrees(g).into_iter().enumerate() {
                let j = ((k + g.degree(v) as i64) / 2) as usize;
                product *= &y.rows()[v][j];
            }
            sum += product;
        }
        sum
    }

    #[test]
    fn subgraph_sum_counts_perfect_matchings_of_k4() {
        let g = family("K4");
        let w = uniform_weights(&g, &[(0, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(subgraph_poly_eval(&g, &w, 30, 1).unwrap(), gi(3, 0));
    }

    #[test]
    fn subgraph_sum_with_all_ones_counts_subsets() {
        let g = family("K4");
        let w = uniform_weights(&g, &[(1, 1); 4]);
        assert_eq!(subgraph_poly_eval(&g, &w, 30, 1).unwrap(), gi(64, 0));
    }

    #[test]
    fn subgraph_sum_handles_loops() {
        // One vertex with two loops: F = x_0 + 2 x_2 + x_4.
        let g = Multigraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        let w = uniform_weights(&g, &[(1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]);
        assert_eq!(subgraph_poly_eval(&g, &w, 30, 1).unwrap(), gi(4, 0));
    }

    #[test]
    fn subgraph_sum_is_multiplicative_over_components() {
        let g = family("C3+C4");
        let w = uniform_weights(&g, &[(1, 2), (2, 3), (1, 1)]);
        let c3 = family("C3");
        let c4 = family("C4");
        let w3 = uniform_weights(&c3, &[(1, 2), (2, 3), (1, 1)]);
        let w4 = uniform_weights(&c4, &[(1, 2), (2, 3), (1, 1)]);
        let whole = subgraph_poly_eval(&g, &w, 30, 1).unwrap();
        let parts = subgraph_poly_eval(&c3, &w3, 30, 1).unwrap()
            * subgraph_poly_eval(&c4, &w4, 30, 1).unwrap();
        assert_eq!(whole, parts);
    }

    #[test]
    fn fast_kernels_match_the_slow_oracles() {
        let g = family("K4");
        let w = uniform_weights(&g, &[(1, 2), (-1, 1), (2, 3), (1, 1)]);
        assert_eq!(
            subgraph_poly_eval(&g, &w, 30, 1).unwrap(),
            subgraph_sum_oracle(&g, &w)
        );
        let y = OrientationWeights::from_rule(&g, |v, k| gi(k + v as i64, 1));
        assert_eq!(
            orientation_sum(&g, &y, 30, 1).unwrap(),
            orientation_sum_oracle(&g, &y)
        );
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let g = family("K5");
        let w = uniform_weights(&g, &[(1, 2), (0, 1), (-1, 3), (2, 1), (1, 1)]);
        let single = subgraph_poly_eval(&g, &w, 30, 1).unwrap();
        for workers in [2, 3, 8] {
            assert_eq!(subgraph_poly_eval(&g, &w, 30, workers).unwrap(), single);
        }
        assert_eq!(count_eulerian_bruteforce(&g, 30, 4).unwrap(), 24);
    }

    #[test]
    fn orientation_sum_with_unit_weights_counts_orientations() {
        let g = family("K4");
        let y = OrientationWeights::from_rule(&g, |_, _| gi(1, 0));
        assert_eq!(orientation_sum(&g, &y, 30, 1).unwrap(), gi(64, 0));
    }

    #[test]
    fn orientation_sum_counts_source_and_sink_free_orientations() {
        // Independent oracle: enumerate orientations directly and count
        // those with no vertex of full out- or in-degree.
        let g = family("K4");
        let mut expected = 0u64;
        for mask in 0..64u64 {
            let degrees = Orientation::from_mask(mask, 6).oriented_degrees(&g);
            if degrees.iter().all(|&k| k.abs() != 3) {
                expected += 1;
            }
        }
        assert_eq!(expected, 24);
        let y = OrientationWeights::from_rule(&g, |_, k| {
            if k.abs() == 3 {
                gi(0, 0)
            } else {
                gi(1, 0)
            }
        });
        assert_eq!(orientation_sum(&g, &y, 30, 1).unwrap(), gi(24, 0));
    }

    #[test]
    fn orientation_sum_rejects_loops() {
        let g = Multigraph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let y = OrientationWeights::from_rule(&g, |_, _| gi(1, 0));
        assert_eq!(
            orientation_sum(&g, &y, 30, 1).unwrap_err(),
            CountError::LoopsUnsupported { edge: 1 }
        );
    }

    #[test]
    fn guard_refuses_oversized_enumerations() {
        let g = family("K5");
        let w = uniform_weights(&g, &[(1, 1); 5]);
        assert_eq!(
            subgraph_poly_eval(&g, &w, 9, 1).unwrap_err(),
            CountError::TooManyEdges { edges: 10, guard_bits: 9 }
        );
        assert!(subgraph_poly_eval(&g, &w, 10, 1).is_ok());
    }

    #[test]
    fn eulerian_counts_for_cycles_and_small_graphs() {
        for spec in ["C3", "C4", "C5", "C6"] {
            let g = family(spec);
            assert_eq!(count_eulerian_bruteforce(&g, 30, 1).unwrap(), 2, "{spec}");
            assert_eq!(count_eulerian_eval(&g, 30, 1).unwrap(), 2, "{spec}");
        }
        // Disjoint unions multiply.
        let g = family("C3+C3");
        assert_eq!(count_eulerian_bruteforce(&g, 30, 1).unwrap(), 4);
        assert_eq!(count_eulerian_eval(&g, 30, 1).unwrap(), 4);
    }

    #[test]
    fn eulerian_counts_match_regular_tournament_numbers() {
        // Eulerian orientations of K5 are the regular tournaments on 5
        // vertices: 24 of them.
        let g = family("K5");
        assert_eq!(count_eulerian_bruteforce(&g, 30, 1).unwrap(), 24);
        assert_eq!(count_eulerian_eval(&g, 30, 1).unwrap(), 24);
    }

    #[test]
    fn eulerian_counts_of_octahedron_and_k44() {
        let g = family("octahedron");
        assert_eq!(count_eulerian_bruteforce(&g, 30, 1).unwrap(), 38);
        assert_eq!(count_eulerian_eval(&g, 30, 1).unwrap(), 38);
        // K4,4 is bipartite, so its Eulerian count equals its half-graph
        // count: the ninety 4×4 binary matrices with row and column sums 2.
        let g = family("K4,4");
        assert_eq!(count_eulerian_eval(&g, 30, 1).unwrap(), 90);
        assert_eq!(count_half_graphs_eval(&g, 30, 1).unwrap(), 90);
    }

    #[test]
    fn eulerian_preconditions_are_enforced() {
        assert_eq!(
            count_eulerian_eval(&family("K4"), 30, 1).unwrap_err(),
            CountError::OddDegree { vertex: 0, degree: 3 }
        );
        let loopy = Multigraph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(
            count_eulerian_bruteforce(&loopy, 30, 1).unwrap_err(),
            CountError::LoopsUnsupported { edge: 0 }
        );
    }

    #[test]
    fn half_graph_counts_on_small_graphs() {
        // C4: the two perfect matchings; C3: none (degree 1 from each
        // vertex is impossible around an odd cycle).
        let c4 = family("C4");
        assert_eq!(count_half_graphs_bruteforce(&c4, 30, 1).unwrap(), 2);
        assert_eq!(count_half_graphs_eval(&c4, 30, 1).unwrap(), 2);
        assert_eq!(count_half_graphs_krawtchouk(&c4, 30, 1).unwrap(), 2);

        let c3 = family("C3");
        assert_eq!(count_half_graphs_bruteforce(&c3, 30, 1).unwrap(), 0);
        assert_eq!(count_half_graphs_eval(&c3, 30, 1).unwrap(), 0);

        // K5: half-graphs are the 2-factors, i.e. the (5-1)!/2 = 12
        // Hamiltonian cycles.
        let k5 = family("K5");
        assert_eq!(count_half_graphs_bruteforce(&k5, 30, 1).unwrap(), 12);
        assert_eq!(count_half_graphs_eval(&k5, 30, 1).unwrap(), 12);
        assert_eq!(count_half_graphs_krawtchouk(&k5, 30, 1).unwrap(), 12);

        // The bow-tie (two triangles sharing a vertex) has even degrees but
        // is not regular, so only the first two routes apply.
        let bowtie =
            Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(count_half_graphs_bruteforce(&bowtie, 30, 1).unwrap(), 2);
        assert_eq!(count_half_graphs_eval(&bowtie, 30, 1).unwrap(), 2);
        assert_eq!(
            count_half_graphs_krawtchouk(&bowtie, 30, 1).unwrap_err(),
            CountError::NotRegular
        );
    }

    #[test]
    fn duality_holds_exactly_on_small_graphs() {
        let g = family("C4");
        let w = uniform_weights(&g, &[(1, 2), (2, 1), (-1, 3)]);
        let report = duality_check(&g, &w, 20, 1).unwrap();
        assert!(report.equal);
        assert_eq!(report.subgraph_side, report.orientation_side);

        // Gaussian-rational weights, mixed per vertex.
        let g = family("K4");
        let vectors: Vec<SignatureVector> = (0..4)
            .map(|v| {
                SignatureVector::new(vec![
                    gi(1, v as i64),
                    gi(-1, 1),
                    real(rational(1, 2)) * gi(0, 1),
                    gi(2, -1),
                ])
            })
            .collect();
        let w = WeightAssignment::new(&g, vectors).unwrap();
        assert!(duality_check(&g, &w, 20, 1).unwrap().equal);
    }

    #[test]
    fn schrijver_bound_attains_equality_on_even_cycles() {
        let report = schrijver_report(&family("C4"), 30, 1).unwrap();
        assert_eq!(report.eulerian, 2);
        assert_eq!(report.bound, rational(1, 1));
        assert_eq!(report.improved_bound, rational(2, 1));
        assert!(report.satisfied && report.improved_satisfied && report.equality);

        let report = schrijver_report(&family("K5"), 30, 1).unwrap();
        assert_eq!(report.eulerian, 24);
        assert_eq!(report.bound, rational(243, 32));
        assert_eq!(report.improved_bound, rational(243, 16));
        assert!(report.satisfied && report.improved_satisfied && !report.equality);

        let report = schrijver_report(&family("C3+C3"), 30, 1).unwrap();
        assert_eq!(report.eulerian, 4);
        assert_eq!(report.improved_bound, rational(2, 1));
        assert!(report.improved_satisfied && !report.equality);
    }

    #[test]
    fn eulerian_equals_half_graphs_exactly_for_bipartite_graphs() {
        for (spec, expect_equal) in
            [("C4", true), ("C6", true), ("C3", false), ("K5", false), ("C3+C3", false)]
        {
            let report = eulerian_vs_halfgraphs(&family(spec), 30, 1).unwrap();
            assert!(report.eulerian_routes_agree, "{spec}");
            assert!(report.half_graph_routes_agree, "{spec}");
            assert_eq!(report.counts_equal, expect_equal, "{spec}");
            assert!(report.dichotomy_holds, "{spec}");
            if !expect_equal {
                assert!(report.eulerian > report.half_graphs, "{spec}");
            }
        }
    }

    #[test]
    fn cubic_distribution_of_k4_matches_the_binomial_form() {
        let dist = cubic_distribution(&family("K4"), 30, 1).unwrap();
        assert_eq!(dist.total, 64);
        assert_eq!(dist.counts, vec![(-1, 8), (0, 48), (1, 8)]);
        assert!(dist.matches);
        assert!(dist.mean_zero);
        // P(0) = 3/4, P(±1) = 1/8.
        assert_eq!(dist.probabilities[1].1, rational(3, 4));
        assert_eq!(dist.closed_form[0].1, rational(1, 8));
    }

    #[test]
    fn cubic_distribution_of_k33_matches_the_binomial_form() {
        let dist = cubic_distribution(&family("K3,3"), 30, 1).unwrap();
        assert_eq!(dist.total, 512);
        assert_eq!(dist.counts, vec![(-1, 96), (0, 320), (1, 96)]);
        assert!(dist.matches && dist.mean_zero);
    }

    #[test]
    fn cubic_distribution_rejects_non_cubic_input() {
        assert_eq!(
            cubic_distribution(&family("C4"), 30, 1).unwrap_err(),
            CountError::NotCubic
        );
        assert_eq!(
            cubic_distribution(&family("K4+K4"), 30, 1).unwrap_err(),
            CountError::NotConnected
        );
    }

    #[test]
    fn cubic_identity_holds_for_k4_at_tau_two() {
        let report =
            cubic_hg_identity_check(&family("K4"), &rational(2, 1), 30, 1).unwrap();
        assert_eq!(report.t, rational(16, 1));
        assert!(report.equal);
        assert!(report.closed_matches);
        // H = Σ t^{n₊ - n₋} = (1/16)·8 + 48 + 16·8 = 353/2... exactly.
        assert_eq!(report.orientation_side, real(rational(353, 2)));
        assert_eq!(report.subgraph_side, real(rational(353, 2)));
        // aⁿ + bⁿ = (5/4)⁴ + (3i/4)⁴ = 706/256.
        assert_eq!(report.closed_form, real(rational(353, 128)));
    }

    #[test]
    fn cubic_identity_holds_for_k33_and_petersen() {
        let report =
            cubic_hg_identity_check(&family("K3,3"), &rational(3, 1), 30, 1).unwrap();
        assert!(report.equal && report.closed_matches);
        let report =
            cubic_hg_identity_check(&family("petersen"), &rational(-5, 2), 30, 1).unwrap();
        assert!(report.equal && report.closed_matches);
        assert_eq!(
            cubic_hg_identity_check(&family("K4"), &Rational::zero(), 30, 1).unwrap_err(),
            CountError::ZeroTau
        );
    }

    #[test]
    fn weight_validation_reports_the_offending_vertex() {
        let g = family("K2,3");
        let short = SignatureVector::new(vec![gi(1, 0); 3]);
        assert_eq!(
            WeightAssignment::new(&g, vec![short; 5]).unwrap_err(),
            CountError::WeightDegreeMismatch { vertex: 0, expected: 3, found: 2 }
        );
    }

    #[test]
    fn float_eval_tracks_the_exact_route() {
        let g = family("K5");
        let w = uniform_weights(&g, &[(1, 2), (-2, 3), (1, 1), (0, 1), (3, 4)]);
        let exact = subgraph_poly_eval(&g, &w, 30, 1).unwrap();
        let rows: Vec<Vec<f64>> = w
            .vectors()
            .iter()
            .map(|x| x.to_floats().unwrap())
            .collect();
        let float = subgraph_poly_eval_f64(&g, &rows, 30, 1).unwrap();
        let exact_f = crate::exact::rational_to_f64(&exact.re);
        assert!((float - exact_f).abs() <= 1e-9 * (1.0 + exact_f.abs()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// On random loop-free multigraphs with random Gaussian-rational
        /// weights, the orientation sum of the Q-evaluations reproduces the
        /// subgraph sum exactly, and replacing every weight vector by its
        /// integer quarter-turn image scales the sum by exactly 2^m.
        #[test]
        fn duality_and_quarter_turn_invariance_on_random_graphs(
            n in 2usize..=5,
            raw_edges in proptest::collection::vec((0usize..5, 0usize..5, 1usize..4), 0..=6),
            seeds in proptest::collection::vec((-3i64..=3, 1i64..=3, -3i64..=3, 1i64..=3), 36),
        ) {
            let edges: Vec<(usize, usize)> = raw_edges
                .iter()
                .map(|&(a, b, shift)| {
                    let u = a % n;
                    let v = b % n;
                    if u == v { (u, (v + shift) % n) } else { (u, v) }
                })
                .filter(|&(u, v)| u != v)
                .collect();
            let g = Multigraph::new(n, edges).unwrap();
            let mut seed_iter = seeds.iter().cycle();
            let mut entry = || {
                let &(a, b, c, d) = seed_iter.next().unwrap();
                gauss(rational(a, b), rational(c, d))
            };
            let vectors: Vec<SignatureVector> = (0..n)
                .map(|v| SignatureVector::new((0..=g.degree(v)).map(|_| entry()).collect()))
                .collect();
            let w = WeightAssignment::new(&g, vectors.clone()).unwrap();

            let report = duality_check(&g, &w, 20, 1).unwrap();
            prop_assert!(report.equal);

            let transformed: Vec<SignatureVector> = vectors
                .iter()
                .map(|x| {
                    let d = x.degree();
                    let m_int = krawtchouk_matrix(d).integer_entries();
                    SignatureVector::new(
                        (0..=d)
                            .map(|r| {
                                (0..=d)
                                    .map(|j| {
                                        real(Rational::from_integer(m_int[r][j].clone()))
                                            * x.get(j)
                                    })
                                    .sum::<GaussianRational>()
                            })
                            .collect(),
                    )
                })
                .collect();
            let tw = WeightAssignment::new(&g, transformed).unwrap();
            let left = subgraph_poly_eval(&g, &tw, 30, 1).unwrap();
            let right = subgraph_poly_eval(&g, &w, 30, 1).unwrap()
                * real(pow2(g.edge_count() as i64));
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn empty_and_edgeless_graphs_behave() {
        let empty = Multigraph::new(0, vec![]).unwrap();
        assert_eq!(count_eulerian_eval(&empty, 30, 1).unwrap(), 1);
        assert_eq!(count_half_graphs_bruteforce(&empty, 30, 1).unwrap(), 1);
        let isolated = Multigraph::new(2, vec![]).unwrap();
        assert_eq!(count_eulerian_bruteforce(&isolated, 30, 1).unwrap(), 1);
        assert_eq!(count_eulerian_eval(&isolated, 30, 1).unwrap(), 1);
    }
}
