//! Normal factor graphs and exact gauge transformations.
//!
//! A normal factor graph places one local function on every vertex of a
//! multigraph; every edge carries a variable over a finite alphabet, and
//! each variable appears in exactly the two functions at its endpoints (a
//! loop feeds two argument slots of the same function).  The partition
//! function sums, over all edge assignments, the product of the local
//! function values.
//!
//! A *gauge pair* assigns to each edge two matrices `(G, H)` with
//! `Gᵀ·H = c·Id` for a nonzero scalar `c`.  Transforming every local
//! function by the matrices on its incident slots multiplies the partition
//! function by exactly `Π_e c_e` — with `c_e = 1` it is invariant.  The
//! scalar slack is what lets the integer orientation gauges (`c_e = 2`)
//! avoid irrational `1/√2` normalisations: the factor `2^m` is tracked,
//! never stored in a table.
//!
//! Argument-slot convention: the arguments of a vertex function follow the
//! incidence order of [`Multigraph::incidence_lists`] — edges in input
//! order, a loop contributing its two slots consecutively (side 0 first).
//! Slot 0 is the most significant digit of the table index.

use crate::enumerate::{clear_denominators, divide_gauss, GaussInt};
use crate::exact::{gauss_ints, GaussianRational};
use crate::graph::Multigraph;
use crate::matrix::ExactMatrix;
use crate::signatures::SignatureVector;
use num_traits::Zero;
use thiserror::Error;

/// Errors from factor-graph construction, evaluation and gauging.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("table length {found} does not match alphabet^arity = {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("expected one function per vertex ({expected}), found {found}")]
    FunctionCount { expected: usize, found: usize },
    #[error("vertex {vertex}: function arity {found} does not match degree {expected}")]
    ArityMismatch { vertex: usize, expected: usize, found: usize },
    #[error("vertex {vertex}: function alphabet {found} does not match {expected}")]
    AlphabetMismatch { vertex: usize, expected: usize, found: usize },
    #[error("gauge pair covers {found} edges, graph has {expected}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("edge {edge}: gauge matrices have inconsistent shapes")]
    GaugeShape { edge: usize },
    #[error("edge {edge}: Gᵀ·H is not a nonzero scalar multiple of the identity")]
    NotTransposePaired { edge: usize },
    #[error("gauge alphabet {gauge} does not match factor graph alphabet {graph}")]
    GaugeAlphabet { gauge: usize, graph: usize },
    #[error("edge {edge} is a loop; gauge transformations require loop-free graphs")]
    LoopInGauge { edge: usize },
    #[error("state space {states} exceeds the enumeration guard 2^{guard_bits} (raise the guard to proceed)")]
    TooManyStates { states: u128, guard_bits: u32 },
    #[error("alphabet and arity overflow the table index space")]
    TableTooLarge,
}

/// A function `[0, q)^arity → GaussianRational`, stored as a dense table.
/// Slot 0 is the most significant digit of the index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFunction {
    arity: usize,
    alphabet: usize,
    table: Vec<GaussianRational>,
}

impl LocalFunction {
    /// Builds a function from its dense value table.
    pub fn from_table(
        arity: usize,
        alphabet: usize,
        table: Vec<GaussianRational>,
    ) -> Result<Self, FactorError> {
        let expected = alphabet
            .checked_pow(u32::try_from(arity).map_err(|_| FactorError::TableTooLarge)?)
            .ok_or(FactorError::TableTooLarge)?;
        if table.len() != expected {
            return Err(FactorError::TableLength { expected, found: table.len() });
        }
        Ok(Self { arity, alphabet, table })
    }

    /// Builds a function by evaluating `f` on every argument tuple.
    pub fn from_fn(
        arity: usize,
        alphabet: usize,
        mut f: impl FnMut(&[usize]) -> GaussianRational,
    ) -> Result<Self, FactorError> {
        let size = alphabet
            .checked_pow(u32::try_from(arity).map_err(|_| FactorError::TableTooLarge)?)
            .ok_or(FactorError::TableTooLarge)?;
        let mut args = vec![0usize; arity];
        let mut table = Vec::with_capacity(size);
        for _ in 0..size {
            table.push(f(&args));
            // Odometer increment, least significant slot last.
            for slot in (0..arity).rev() {
                args[slot] += 1;
                if args[slot] < alphabet {
                    break;
                }
                args[slot] = 0;
            }
        }
        Self::from_table(arity, alphabet, table)
    }

    /// The symmetric binary function whose value depends only on how many
    /// arguments are 1: `f(σ) = x_{|σ|}` for a signature `x`.
    pub fn from_signature(x: &SignatureVector) -> Self {
        let d = x.degree();
        Self::from_fn(d, 2, |args| {
            let ones: usize = args.iter().sum();
            x.get(ones).clone()
        })
        .expect("signature tables are small")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn table(&self) -> &[GaussianRational] {
        &self.table
    }

    /// Looks up the value at an argument tuple.
    pub fn value(&self, args: &[usize]) -> &GaussianRational {
        assert_eq!(args.len(), self.arity, "argument count must equal arity");
        let mut idx = 0usize;
        for &a in args {
            debug_assert!(a < self.alphabet);
            idx = idx * self.alphabet + a;
        }
        &self.table[idx]
    }
}

/// A multigraph with one local function per vertex (arity = degree), all
/// over a common edge alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFactorGraph {
    graph: Multigraph,
    alphabet: usize,
    functions: Vec<LocalFunction>,
}

impl NormalFactorGraph {
    pub fn new(
        graph: Multigraph,
        alphabet: usize,
        functions: Vec<LocalFunction>,
    ) -> Result<Self, FactorError> {
        if functions.len() != graph.vertex_count() {
            return Err(FactorError::FunctionCount {
                expected: graph.vertex_count(),
                found: functions.len(),
            });
        }
        for (vertex, f) in functions.iter().enumerate() {
            if f.arity() != graph.degree(vertex) {
                return Err(FactorError::ArityMismatch {
                    vertex,
                    expected: graph.degree(vertex),
                    found: f.arity(),
                });
            }
            if f.alphabet() != alphabet {
                return Err(FactorError::AlphabetMismatch {
                    vertex,
                    expected: alphabet,
                    found: f.alphabet(),
                });
            }
        }
        Ok(Self { graph, alphabet, functions })
    }

    /// Places the symmetric function of `signatures[v]` on every vertex
    /// (binary alphabet).  Signature degrees must match vertex degrees.
    pub fn from_signatures(
        graph: Multigraph,
        signatures: &[SignatureVector],
    ) -> Result<Self, FactorError> {
        let functions = signatures.iter().map(LocalFunction::from_signature).collect();
        Self::new(graph, 2, functions)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn function(&self, v: usize) -> &LocalFunction {
        &self.functions[v]
    }

    /// The exact partition function `Σ_σ Π_v f_v(σ_∂v)`, by enumeration of
    /// all `alphabet^m` edge assignments.  Refuses to enumerate more than
    /// `2^guard_bits` states.
    pub fn partition_function(&self, guard_bits: u32) -> Result<GaussianRational, FactorError> {
        let m = self.graph.edge_count();
        let q = self.alphabet;
        let states = (q as u128)
            .checked_pow(u32::try_from(m).map_err(|_| FactorError::TableTooLarge)?)
            .ok_or(FactorError::TooManyStates { states: u128::MAX, guard_bits })?;
        let limit = 1u128 << guard_bits.min(100);
        if states > limit {
            return Err(FactorError::TooManyStates { states, guard_bits });
        }
        if q == 0 && m > 0 {
            return Ok(GaussianRational::zero());
        }

        // Clear denominators once so the assignment loop multiplies
        // Gaussian integers only.
        let mut tables = Vec::with_capacity(self.functions.len());
        let mut denominator = num_bigint::BigInt::from(1);
        for f in &self.functions {
            let (scaled, den) = clear_denominators(f.table());
            tables.push(scaled);
            denominator *= den;
        }

        let incidence = self.graph.incidence_lists();
        let mut assignment = vec![0usize; m];
        let mut sum = GaussInt::zero();
        for _ in 0..states {
            let mut product = GaussInt::new(1.into(), 0.into());
            let mut zero = false;
            for (v, slots) in incidence.iter().enumerate() {
                let mut idx = 0usize;
                for &(e, _) in slots {
                    idx = idx * q + assignment[e];
                }
                let value = &tables[v][idx];
                if value.is_zero() {
                    zero = true;
                    break;
                }
                product *= value;
            }
            if !zero {
                sum += product;
            }
            for slot in (0..m).rev() {
                assignment[slot] += 1;
                if assignment[slot] < q {
                    break;
                }
                assignment[slot] = 0;
            }
        }
        Ok(divide_gauss(&sum, &denominator))
    }
}

/// Per-edge matrices `(G, H)` with `Gᵀ·H = c·Id` for a nonzero scalar `c`;
/// `G` acts on the slot at the edge's first endpoint, `H` at its second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugePair {
    domain_alphabet: usize,
    codomain_alphabet: usize,
    at_first: Vec<ExactMatrix>,
    at_second: Vec<ExactMatrix>,
    scalars: Vec<GaussianRational>,
}

impl GaugePair {
    /// Builds a gauge pair from per-edge matrix pairs, verifying the
    /// transpose-pairing condition on every edge and recording its scalar.
    pub fn new(pairs: Vec<(ExactMatrix, ExactMatrix)>) -> Result<Self, FactorError> {
        assert!(!pairs.is_empty(), "a gauge pair needs at least one edge");
        let domain = pairs[0].0.cols();
        let codomain = pairs[0].0.rows();
        let mut at_first = Vec::with_capacity(pairs.len());
        let mut at_second = Vec::with_capacity(pairs.len());
        let mut scalars = Vec::with_capacity(pairs.len());
        for (edge, (g, h)) in pairs.into_iter().enumerate() {
            let shapes_ok = g.rows() == codomain
                && h.rows() == codomain
                && g.cols() == domain
                && h.cols() == domain;
            if !shapes_ok {
                return Err(FactorError::GaugeShape { edge });
            }
            let product = g.transpose().mul(&h);
            let scalar = product
                .scalar_identity_factor()
                .filter(|c| !c.is_zero())
                .ok_or(FactorError::NotTransposePaired { edge })?;
            at_first.push(g);
            at_second.push(h);
            scalars.push(scalar);
        }
        Ok(Self {
            domain_alphabet: domain,
            codomain_alphabet: codomain,
            at_first,
            at_second,
            scalars,
        })
    }

    /// The identity gauge on `m` edges over alphabet `q`.
    pub fn identity(m: usize, q: usize) -> Self {
        Self::uniform(m, ExactMatrix::identity(q), ExactMatrix::identity(q))
            .expect("identity matrices pair with themselves")
    }

    /// The same matrix pair on every one of `m` edges.
    pub fn uniform(m: usize, g: ExactMatrix, h: ExactMatrix) -> Result<Self, FactorError> {
        assert!(m > 0, "a gauge pair needs at least one edge");
        Self::new((0..m).map(|_| (g.clone(), h.clone())).collect())
    }

    pub fn edge_count(&self) -> usize {
        self.at_first.len()
    }

    pub fn domain_alphabet(&self) -> usize {
        self.domain_alphabet
    }

    pub fn codomain_alphabet(&self) -> usize {
        self.codomain_alphabet
    }

    pub fn matrices(&self, edge: usize) -> (&ExactMatrix, &ExactMatrix) {
        (&self.at_first[edge], &self.at_second[edge])
    }

    /// The factor `Π_e c_e` the transformation multiplies the partition
    /// function by.
    pub fn scale(&self) -> GaussianRational {
        let mut acc = gauss_ints(1, 0);
        for c in &self.scalars {
            acc *= c;
        }
        acc
    }
}

/// The integer orientation gauges: `G₊ = [[1, -i], [1, i]]` and
/// `G₋ = [[1, i], [1, -i]]`, with `G₊ᵀ·G₋ = 2·Id` (scalar 2, not 1 — the
/// price of keeping the entries integral).
pub fn orientation_gauges() -> (ExactMatrix, ExactMatrix) {
    let plus = ExactMatrix::from_rows(vec![
        vec![gauss_ints(1, 0), gauss_ints(0, -1)],
        vec![gauss_ints(1, 0), gauss_ints(0, 1)],
    ]);
    let minus = ExactMatrix::from_rows(vec![
        vec![gauss_ints(1, 0), gauss_ints(0, 1)],
        vec![gauss_ints(1, 0), gauss_ints(0, -1)],
    ]);
    (plus, minus)
}

/// The orientation gauge pair on `m` edges (scale `2^m`).
pub fn orientation_gauge_pair(m: usize) -> GaugePair {
    let (plus, minus) = orientation_gauges();
    GaugePair::uniform(m, plus, minus).expect("orientation gauges pair to 2·Id")
}

/// Transforms every local function of `h` by the gauge matrices on its
/// incident slots.  The partition function of the result equals
/// `gauge.scale()` times that of `h`.  Loops are rejected: a loop would pair
/// a matrix with itself, which the edgewise condition cannot express.
pub fn apply_gauge(h: &NormalFactorGraph, gauge: &GaugePair) -> Result<NormalFactorGraph, FactorError> {
    if gauge.domain_alphabet() != h.alphabet() {
        return Err(FactorError::GaugeAlphabet {
            gauge: gauge.domain_alphabet(),
            graph: h.alphabet(),
        });
    }
    if gauge.edge_count() != h.graph().edge_count() {
        return Err(FactorError::EdgeCountMismatch {
            expected: h.graph().edge_count(),
            found: gauge.edge_count(),
        });
    }
    if let Some(edge) = (0..h.graph().edge_count()).find(|&e| h.graph().is_loop(e)) {
        return Err(FactorError::LoopInGauge { edge });
    }
    let incidence = h.graph().incidence_lists();
    let mut functions = Vec::with_capacity(h.graph().vertex_count());
    for (v, slots) in incidence.iter().enumerate() {
        let f = h.function(v);
        let mut dims = vec![h.alphabet(); f.arity()];
        let mut table = f.table().to_vec();
        for (axis, &(e, side)) in slots.iter().enumerate() {
            let matrix = if side == 0 { &gauge.at_first[e] } else { &gauge.at_second[e] };
            table = transform_axis(&mut dims, table, axis, matrix);
        }
        functions.push(LocalFunction::from_table(
            f.arity(),
            gauge.codomain_alphabet(),
            table,
        )?);
    }
    NormalFactorGraph::new(h.graph().clone(), gauge.codomain_alphabet(), functions)
}

/// The gauge pair equivalent to applying `first` and then `second`:
/// per-edge matrix products, scalars multiplying.
pub fn compose_gauges(first: &GaugePair, second: &GaugePair) -> Result<GaugePair, FactorError> {
    if first.edge_count() != second.edge_count() {
        return Err(FactorError::EdgeCountMismatch {
            expected: first.edge_count(),
            found: second.edge_count(),
        });
    }
    if second.domain_alphabet() != first.codomain_alphabet() {
        return Err(FactorError::GaugeAlphabet {
            gauge: second.domain_alphabet(),
            graph: first.codomain_alphabet(),
        });
    }
    let pairs = (0..first.edge_count())
        .map(|e| {
            (
                second.at_first[e].mul(&first.at_first[e]),
                second.at_second[e].mul(&first.at_second[e]),
            )
        })
        .collect();
    GaugePair::new(pairs)
}

/// Contracts `matrix` into the given axis of a dense tensor:
/// `out[.., τ, ..] = Σ_σ matrix[τ][σ] · in[.., σ, ..]`, updating `dims`.
fn transform_axis(
    dims: &mut [usize],
    data: Vec<GaussianRational>,
    axis: usize,
    matrix: &ExactMatrix,
) -> Vec<GaussianRational> {
    let q_in = dims[axis];
    let q_out = matrix.rows();
    assert_eq!(matrix.cols(), q_in, "matrix does not match axis alphabet");
    let stride: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let mut out = vec![GaussianRational::zero(); outer * q_out * stride];
    for o in 0..outer {
        for tau in 0..q_out {
            for sigma in 0..q_in {
                let coeff = matrix.get(tau, sigma);
                if coeff.is_zero() {
                    continue;
                }
                let src = (o * q_in + sigma) * stride;
                let dst = (o * q_out + tau) * stride;
                for inner in 0..stride {
                    let term = coeff * &data[src + inner];
                    out[dst + inner] += term;
                }
            }
        }
    }
    dims[axis] = q_out;
    out
}
