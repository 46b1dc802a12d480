//! Randomized exact verification trials: gauge invariance on random
//! normal factor graphs, and subgraph/orientation duality on random
//! weight assignments.  All trials are seeded and reproducible; the RNG
//! stream is version-stable so identical seeds give identical trials
//! across toolchain updates.

use num_traits::Zero;
use rand::{Rng, SeedableRng};

use crate::counting::{self, CountError, DualityReport, WeightAssignment};
use crate::exact::{gauss, rational, real, GaussianRational, Rational};
use crate::factor::{apply_gauge, compose_gauges, GaugePair, LocalFunction, NormalFactorGraph};
use crate::graph::Multigraph;
use crate::matrix::ExactMatrix;
use crate::signatures::SignatureVector;

/// Seeded RNG used by every randomized trial.
pub type TrialRng = rand_chacha::ChaCha8Rng;

/// Partition functions in the gauge trials stay tiny (at most 6 edges).
const TRIAL_GUARD_BITS: u32 = 10;

pub fn rng_from_seed(seed: u64) -> TrialRng {
    TrialRng::seed_from_u64(seed)
}

/// A random rational with numerator in `-3..=3` and denominator in `1..=3`.
pub fn random_rational(rng: &mut TrialRng) -> Rational {
    rational(rng.random_range(-3..=3), rng.random_range(1..=3))
}

pub fn random_gaussian(rng: &mut TrialRng) -> GaussianRational {
    gauss(random_rational(rng), random_rational(rng))
}

/// A random loop-free multigraph with 2–4 vertices and 1–6 edges
/// (parallel edges allowed).
pub fn random_multigraph(rng: &mut TrialRng) -> Multigraph {
    let n = rng.random_range(2..=4);
    let m = rng.random_range(1..=6);
    let edges = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = (u + rng.random_range(1..n)) % n;
            (u, v)
        })
        .collect();
    Multigraph::new(n, edges).expect("generated endpoints are in range")
}

/// A random invertible gauge pair `(G, H)` over a `q`-letter alphabet with
/// `GᵀH = c·Id` for a random nonzero rational `c`.
pub fn random_gauge(rng: &mut TrialRng, q: usize) -> (ExactMatrix, ExactMatrix, GaussianRational) {
    loop {
        let g = ExactMatrix::from_rows(
            (0..q)
                .map(|_| (0..q).map(|_| random_gaussian(rng)).collect())
                .collect(),
        );
        let Some(inverse_t) = g.transpose().inverse() else {
            continue;
        };
        let c = loop {
            let c = real(random_rational(rng));
            if !c.is_zero() {
                break c;
            }
        };
        let h = inverse_t.scale(&c);
        return (g, h, c);
    }
}

/// A factor graph on `g` with uniformly random Gaussian-rational tables.
pub fn random_factor_graph(rng: &mut TrialRng, g: &Multigraph, q: usize) -> NormalFactorGraph {
    let functions = (0..g.vertex_count())
        .map(|v| {
            LocalFunction::from_fn(g.degree(v), q, |_| random_gaussian(rng))
                .expect("small tables")
        })
        .collect();
    NormalFactorGraph::new(g.clone(), q, functions).expect("arities match degrees")
}

/// A random weight assignment on `g`; real entries unless `complex`.
pub fn random_weights(rng: &mut TrialRng, g: &Multigraph, complex: bool) -> WeightAssignment {
    let vectors = (0..g.vertex_count())
        .map(|v| {
            SignatureVector::new(
                (0..=g.degree(v))
                    .map(|_| {
                        if complex {
                            random_gaussian(rng)
                        } else {
                            real(random_rational(rng))
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    WeightAssignment::new(g, vectors).expect("vector degrees match")
}

/// Outcome of a batch of gauge trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTrialSummary {
    pub trials: usize,
    /// Trials where the partition function moved by anything other than
    /// the gauge's recorded scale.
    pub invariance_failures: usize,
    /// Trials where applying two gauges in sequence differed, table for
    /// table, from applying their composition.
    pub composition_failures: usize,
}

impl GaugeTrialSummary {
    pub fn all_passed(&self) -> bool {
        self.invariance_failures == 0 && self.composition_failures == 0
    }
}

/// Runs `trials` randomized exact gauge trials: a random factor graph, a
/// random valid gauge pair per edge, then invariance and composition
/// checked by exact equality.
pub fn run_gauge_trials(trials: usize, seed: u64) -> GaugeTrialSummary {
    let mut rng = rng_from_seed(seed);
    let mut invariance_failures = 0usize;
    let mut composition_failures = 0usize;
    for _ in 0..trials {
        let graph = random_multigraph(&mut rng);
        let q = rng.random_range(2..=3);
        let nfg = random_factor_graph(&mut rng, &graph, q);
        let z = nfg.partition_function(TRIAL_GUARD_BITS).expect("tiny trial graph");

        let m = graph.edge_count();
        let mut pairs = Vec::with_capacity(m);
        let mut scale = GaussianRational::from(rational(1, 1));
        for _ in 0..m {
            let (g_mat, h_mat, c) = random_gauge(&mut rng, q);
            scale *= c;
            pairs.push((g_mat, h_mat));
        }
        let first = GaugePair::new(pairs).expect("generated pairs are valid");
        let gauged = apply_gauge(&nfg, &first).expect("alphabet and edge counts match");
        let z_gauged = gauged.partition_function(TRIAL_GUARD_BITS).expect("tiny trial graph");
        if z_gauged != z.clone() * scale {
            invariance_failures += 1;
        }

        let second_pairs = (0..m)
            .map(|_| {
                let (g_mat, h_mat, _) = random_gauge(&mut rng, q);
                (g_mat, h_mat)
            })
            .collect();
        let second = GaugePair::new(second_pairs).expect("generated pairs are valid");
        let sequential = apply_gauge(&gauged, &second).expect("alphabet and edge counts match");
        let composed = compose_gauges(&first, &second).expect("alphabets compose");
        let direct = apply_gauge(&nfg, &composed).expect("alphabet and edge counts match");
        if sequential != direct {
            composition_failures += 1;
        }
    }
    GaugeTrialSummary { trials, invariance_failures, composition_failures }
}

/// Outcome of a batch of duality trials on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityTrialSummary {
    pub trials: usize,
    /// Trials (real or complex weights) where the two sides differed.
    pub equality_failures: usize,
    /// Real-weight trials where the orientation side, assembled from
    /// complex terms, failed to come out exactly real.
    pub imaginary_failures: usize,
    /// The first real-weight trial, for display.
    pub sample: Option<DualityReport>,
}

impl DualityTrialSummary {
    pub fn all_passed(&self) -> bool {
        self.equality_failures == 0 && self.imaginary_failures == 0
    }
}

/// Runs `trials` duality trials on `g`: each trial checks exact equality
/// of the subgraph and orientation sums for a complex random weighting,
/// then equality plus exact realness for a real random weighting.
pub fn run_duality_trials(
    g: &Multigraph,
    trials: usize,
    seed: u64,
    guard_bits: u32,
    workers: usize,
) -> Result<DualityTrialSummary, CountError> {
    let mut rng = rng_from_seed(seed);
    let mut equality_failures = 0usize;
    let mut imaginary_failures = 0usize;
    let mut sample = None;
    for _ in 0..trials {
        let complex_weights = random_weights(&mut rng, g, true);
        let complex_report = counting::duality_check(g, &complex_weights, guard_bits, workers)?;
        if !complex_report.equal {
            equality_failures += 1;
        }

        let real_weights = random_weights(&mut rng, g, false);
        let real_report = counting::duality_check(g, &real_weights, guard_bits, workers)?;
        if !real_report.equal {
            equality_failures += 1;
        }
        if !real_report.orientation_side.im.is_zero() {
            imaginary_failures += 1;
        }
        sample.get_or_insert(real_report);
    }
    Ok(DualityTrialSummary { trials, equality_failures, imaginary_failures, sample })
}
