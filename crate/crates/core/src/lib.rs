//! Exact counting of Eulerian orientations, half-graphs and other
//! degree-constrained subgraphs of small multigraphs.
//!
//! The library has two independent routes to every count:
//!
//! * **Brute force** — Gray-code enumeration of all edge subsets or edge
//!   orientations, with O(1) incremental maintenance of vertex degrees.
//! * **Closed-form evaluation** — evaluating the subgraph-generating sum
//!   `F_G(x) = Σ_{A⊆E} Π_v x^v_{d_A(v)}` at distinguished signature vectors
//!   (obtained from a duality between subgraph sums and orientation sums).
//!
//! Every closed-form count is checked against the brute-force oracle, and a
//! small normal-factor-graph engine ([`factor`]) verifies the gauge
//! transformations the duality is built from.  All arithmetic is exact:
//! rationals with big-integer components, extended by the imaginary unit
//! ([`exact::GaussianRational`]).

pub mod counting;
pub mod exact;
pub mod factor;
pub mod graph;
pub mod matrix;
pub mod report;
pub mod signatures;
pub mod trials;

mod enumerate;

pub use exact::{GaussianRational, Rational};
pub use graph::Multigraph;
