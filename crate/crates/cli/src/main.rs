//! Command-line front end: ingest a graph, run exact counts and identity
//! checks, and print deterministic reports.
//!
//! Exit codes: `0` success (all checks pass), `1` user error (bad flags,
//! unreadable input, precondition violations), `2` verification mismatch —
//! every checked identity is a theorem, so a `2` indicates an
//! implementation bug rather than a property of the input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gaugecount::counting::{self, DEFAULT_GUARD_BITS, DUALITY_GUARD_BITS};
use gaugecount::exact::parse_rational;
use gaugecount::report::{
    format_float, rational_rows_to_strings, CountReport, DichotomyReport, DistributionReport,
    DualityBatchReport, DualityTrial, GaugeBatchReport, GraphSummary, IdentityReport,
    MatrixReport,
};
use gaugecount::signatures::{
    clement_matrix, parse_angle, q_coefficients, rotation_matrix, ExactRotation, RotationMatrix,
};
use gaugecount::trials;
use gaugecount::Multigraph;

const EXIT_MISMATCH: i32 = 2;

#[derive(Parser)]
#[command(
    name = "gaugecount",
    version,
    about = "Exact counting of Eulerian orientations, half-graphs and weighted subgraph sums"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Count a quantity by every available route and check agreement.
    Count {
        #[command(subcommand)]
        target: CountTarget,
    },
    /// Verify an identity or bound, exactly.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Print an exact matrix or coefficient vector.
    Matrix {
        #[command(subcommand)]
        target: MatrixTarget,
    },
    /// Tabulate an exact distribution against its closed form.
    Distribution {
        #[command(subcommand)]
        target: DistributionTarget,
    },
    /// Check a two-sided identity.
    Identity {
        #[command(subcommand)]
        target: IdentityTarget,
    },
}

#[derive(Subcommand)]
enum CountTarget {
    /// Eulerian orientations: closed-form evaluation vs brute force.
    Eulerian {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Half-graphs: brute force, alternating-vector evaluation, and (for
    /// regular graphs) the Krawtchouk-column evaluation.
    #[command(name = "half-graphs")]
    HalfGraphs {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        run: RunOptions,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Gauge invariance and composition on randomized factor graphs.
    Gauge {
        /// Number of randomized trials.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// RNG seed (fixed default keeps output deterministic).
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        format: FormatOption,
    },
    /// Subgraph-sum/orientation-sum duality under random exact weights.
    Duality {
        #[command(flatten)]
        graph: GraphInput,
        /// Number of randomized weight assignments.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// RNG seed (fixed default keeps output deterministic).
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Enumeration guard (both sides walk 2^m states).
        #[arg(long, default_value_t = DUALITY_GUARD_BITS)]
        guard: u32,
        /// Worker threads for enumeration.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        format: FormatOption,
    },
    /// The product lower bound on the Eulerian count and its doubling.
    Schrijver {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Eulerian count vs half-graph count: equal exactly iff bipartite.
    Dichotomy {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        run: RunOptions,
    },
}

#[derive(Subcommand)]
enum MatrixTarget {
    /// Rotation matrix on degree-d signatures (exact for multiples of π/4).
    Rotation {
        #[command(flatten)]
        degree: DegreeOption,
        /// Angle: `pi/4`, `-pi/2`, `3pi/4`, `0`, or a decimal in radians.
        #[arg(short = 't', long = "angle", value_name = "ANGLE", allow_hyphen_values = true)]
        angle: String,
        /// Allow floating-point output for generic angles.
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        format: FormatOption,
    },
    /// The π/4 rotation (scaled Krawtchouk matrix).
    Krawtchouk {
        #[command(flatten)]
        degree: DegreeOption,
        #[command(flatten)]
        format: FormatOption,
    },
    /// The signed tridiagonal derivation matrix.
    Clement {
        #[command(flatten)]
        degree: DegreeOption,
        #[command(flatten)]
        format: FormatOption,
    },
    /// Coefficients of the eigenform Q_(k) in x_0..x_d.
    Q {
        #[command(flatten)]
        degree: DegreeOption,
        /// Oriented degree k (same parity as d, |k| ≤ d).
        #[arg(short = 'k', long = "oriented-degree", value_name = "K", allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        format: FormatOption,
    },
}

#[derive(Subcommand)]
enum DistributionTarget {
    /// Sources minus sinks over uniform random orientations of a connected
    /// cubic graph, against the closed binomial form.
    Cubic {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        run: RunOptions,
    },
}

#[derive(Subcommand)]
enum IdentityTarget {
    /// The cubic τ-identity linking the oriented-degree generating sum to a
    /// subgraph-sum evaluation.
    #[command(name = "cubic-hg")]
    CubicHg {
        #[command(flatten)]
        graph: GraphInput,
        /// Rational τ ≠ 0 (t = τ⁴), e.g. `2` or `-5/2`.
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        tau: String,
        #[command(flatten)]
        run: RunOptions,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Edge-list file: `n m` header line, then one `u v` pair per line.
    #[arg(long, value_name = "PATH")]
    file: Option<std::path::PathBuf>,
    /// Family spec: K5, C6, K4,4, octahedron, petersen; `+` joins
    /// disjoint components (C3+C3).
    #[arg(long, value_name = "SPEC")]
    family: Option<String>,
    /// graph6 string (standard simple-graph encoding).
    #[arg(long, value_name = "G6")]
    graph6: Option<String>,
}

#[derive(Args)]
struct RunOptions {
    /// Enumeration guard: refuse runs with more than 2^GUARD states.
    #[arg(long, default_value_t = DEFAULT_GUARD_BITS)]
    guard: u32,
    /// Worker threads for enumeration.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[command(flatten)]
    format: FormatOption,
}

#[derive(Args)]
struct FormatOption {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version displays are successful runs; everything
            // else is a user error (exit 1, not clap's default 2 — exit 2
            // is reserved for verification mismatches).
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            e.print().expect("writing diagnostics");
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.verb {
        Verb::Count { target } => match target {
            CountTarget::Eulerian { graph, run } => count_eulerian(&graph, &run),
            CountTarget::HalfGraphs { graph, run } => count_half_graphs(&graph, &run),
        },
        Verb::Verify { target } => match target {
            VerifyTarget::Gauge { trials, seed, format } => {
                verify_gauge(trials, seed, format.format)
            }
            VerifyTarget::Duality { graph, trials, seed, guard, workers, format } => {
                verify_duality(&graph, trials, seed, guard, workers, format.format)
            }
            VerifyTarget::Schrijver { graph, run } => verify_schrijver(&graph, &run),
            VerifyTarget::Dichotomy { graph, run } => verify_dichotomy(&graph, &run),
        },
        Verb::Matrix { target } => match target {
            MatrixTarget::Rotation { degree, angle, float, format } => {
                matrix_rotation(degree.degree, &angle, float, format.format)
            }
            MatrixTarget::Krawtchouk { degree, format } => {
                matrix_krawtchouk(degree.degree, format.format)
            }
            MatrixTarget::Clement { degree, format } => {
                matrix_clement(degree.degree, format.format)
            }
            MatrixTarget::Q { degree, k, format } => matrix_q(degree.degree, k, format.format),
        },
        Verb::Distribution { target } => match target {
            DistributionTarget::Cubic { graph, run } => distribution_cubic(&graph, &run),
        },
        Verb::Identity { target } => match target {
            IdentityTarget::CubicHg { graph, tau, run } => identity_cubic_hg(&graph, &tau, &run),
        },
    }
}

#[derive(Args)]
struct DegreeOption {
    /// Signature degree d (matrices are (d+1)×(d+1)).
    #[arg(short = 'd', long = "degree", value_name = "D")]
    degree: usize,
}

fn load_graph(input: &GraphInput) -> Result<Multigraph, String> {
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return Multigraph::parse_edge_list(&text).map_err(|e| e.to_string());
    }
    if let Some(spec) = &input.family {
        return Multigraph::from_family_spec(spec).map_err(|e| e.to_string());
    }
    if let Some(g6) = &input.graph6 {
        return Multigraph::from_graph6(g6).map_err(|e| e.to_string());
    }
    Err("provide one of --file, --family, --graph6".to_owned())
}

/// Prints the report and converts a pass flag into the exit code.
fn finish<T: serde::Serialize>(report: &T, format: Format, passed: bool) -> Result<i32, String> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
            println!("{text}");
        }
        Format::Text => {
            let value = serde_json::to_value(report).map_err(|e| e.to_string())?;
            print!("{}", render_text(&value));
        }
    }
    Ok(if passed { 0 } else { EXIT_MISMATCH })
}

// ======================================================================
// Count
// ======================================================================

fn count_eulerian(graph: &GraphInput, run: &RunOptions) -> Result<i32, String> {
    let g = load_graph(graph)?;
    let evaluation =
        counting::count_eulerian_eval(&g, run.guard, run.workers).map_err(|e| e.to_string())?;
    let brute = counting::count_eulerian_bruteforce(&g, run.guard, run.workers)
        .map_err(|e| e.to_string())?;
    let report = CountReport::eulerian(&g, evaluation, brute);
    let passed = report.agreement;
    finish(&report, run.format.format, passed)
}

fn count_half_graphs(graph: &GraphInput, run: &RunOptions) -> Result<i32, String> {
    let g = load_graph(graph)?;
    let evaluation = counting::count_half_graphs_eval(&g, run.guard, run.workers)
        .map_err(|e| e.to_string())?;
    let brute = counting::count_half_graphs_bruteforce(&g, run.guard, run.workers)
        .map_err(|e| e.to_string())?;
    let krawtchouk = if g.is_regular().is_some() {
        Some(
            counting::count_half_graphs_krawtchouk(&g, run.guard, run.workers)
                .map_err(|e| e.to_string())?,
        )
    } else {
        None
    };
    let report = CountReport::half_graphs(&g, evaluation, brute, krawtchouk);
    let passed = report.agreement;
    finish(&report, run.format.format, passed)
}

// ======================================================================
// Verify
// ======================================================================

fn verify_gauge(trials: usize, seed: u64, format: Format) -> Result<i32, String> {
    let summary = trials::run_gauge_trials(trials, seed);
    let report = GaugeBatchReport {
        trials: summary.trials,
        invariance_failures: summary.invariance_failures,
        composition_failures: summary.composition_failures,
        all_passed: summary.all_passed(),
    };
    let passed = report.all_passed;
    finish(&report, format, passed)
}

fn verify_duality(
    graph: &GraphInput,
    trials: usize,
    seed: u64,
    guard: u32,
    workers: usize,
    format: Format,
) -> Result<i32, String> {
    let g = load_graph(graph)?;
    let summary =
        trials::run_duality_trials(&g, trials, seed, guard, workers).map_err(|e| e.to_string())?;
    let sample = summary.sample.as_ref().ok_or("at least one trial is required")?;
    let report = DualityBatchReport {
        graph: GraphSummary::new(&g),
        trials: summary.trials,
        equality_failures: summary.equality_failures,
        imaginary_failures: summary.imaginary_failures,
        all_passed: summary.all_passed(),
        sample: DualityTrial::new(sample),
    };
    let passed = report.all_passed;
    finish(&report, format, passed)
}

fn verify_schrijver(graph: &GraphInput, run: &RunOptions) -> Result<i32, String> {
    let g = load_graph(graph)?;
    let schrijver =
        counting::schrijver_report(&g, run.guard, run.workers).map_err(|e| e.to_string())?;
    let report = CountReport::schrijver(&g, &schrijver);
    // The doubled bound needs at least one edge (it counts the empty and
    // full subsets as distinct contributions).
    let passed = schrijver.satisfied
        && schrijver.terms_nonnegative
        && (g.edge_count() == 0 || schrijver.improved_satisfied);
    finish(&report, run.format.format, passed)
}

fn verify_dichotomy(graph: &GraphInput, run: &RunOptions) -> Result<i32, String> {
    let g = load_graph(graph)?;
    let dichotomy = counting::eulerian_vs_halfgraphs(&g, run.guard, run.workers)
        .map_err(|e| e.to_string())?;
    let report = DichotomyReport::new(&g, &dichotomy);
    let passed = dichotomy.dichotomy_holds
        && dichotomy.eulerian_routes_agree
        && dichotomy.half_graph_routes_agree;
    finish(&report, run.format.format, passed)
}

// ======================================================================
// Matrix
// ======================================================================

/// Renders an exact π/4-multiple rotation: rational entries when the √2
/// exponent is even, otherwise integer entries with the exponent alongside.
fn exact_rotation_report(name: &str, angle: Option<String>, rotation: &ExactRotation) -> MatrixReport {
    let degree = rotation.degree();
    match rotation.rational_entries() {
        Some(rows) => MatrixReport {
            name: name.to_owned(),
            degree,
            angle,
            oriented_degree: None,
            sqrt2_exponent: None,
            entries: rational_rows_to_strings(&rows),
        },
        None => MatrixReport {
            name: name.to_owned(),
            degree,
            angle,
            oriented_degree: None,
            sqrt2_exponent: Some(rotation.sqrt2_exp()),
            entries: rotation
                .integer_entries()
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect(),
        },
    }
}

fn matrix_rotation(d: usize, angle_text: &str, float: bool, format: Format) -> Result<i32, String> {
    let angle = parse_angle(angle_text).ok_or_else(|| format!("unparsable angle `{angle_text}`"))?;
    let report = match rotation_matrix(d, angle) {
        RotationMatrix::Exact(rotation) => {
            exact_rotation_report("rotation", Some(angle.to_string()), &rotation)
        }
        RotationMatrix::Float(rotation) => {
            if !float {
                return Err(format!(
                    "angle `{angle_text}` is not a multiple of pi/4; exact output is impossible — pass --float for a floating-point matrix"
                ));
            }
            MatrixReport {
                name: "rotation".to_owned(),
                degree: d,
                angle: Some(angle.to_string()),
                oriented_degree: None,
                sqrt2_exponent: None,
                entries: rotation
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(|&x| format_float(x)).collect())
                    .collect(),
            }
        }
    };
    finish(&report, format, true)
}

fn matrix_krawtchouk(d: usize, format: Format) -> Result<i32, String> {
    let rotation = gaugecount::signatures::krawtchouk_matrix(d);
    let report = exact_rotation_report("krawtchouk", None, &rotation);
    finish(&report, format, true)
}

fn matrix_clement(d: usize, format: Format) -> Result<i32, String> {
    let entries = clement_matrix(d)
        .iter()
        .map(|row| row.iter().map(|e| e.to_string()).collect())
        .collect();
    let report = MatrixReport {
        name: "clement".to_owned(),
        degree: d,
        angle: None,
        oriented_degree: None,
        sqrt2_exponent: None,
        entries,
    };
    finish(&report, format, true)
}

fn matrix_q(d: usize, k: i64, format: Format) -> Result<i32, String> {
    let form = q_coefficients(d, k).map_err(|e| e.to_string())?;
    let report = MatrixReport {
        name: "q-coefficients".to_owned(),
        degree: d,
        angle: None,
        oriented_degree: Some(k),
        sqrt2_exponent: None,
        entries: vec![form
            .coeffs()
            .iter()
            .map(gaugecount::exact::format_gaussian)
            .collect()],
    };
    finish(&report, format, true)
}

// ======================================================================
// Distribution and identity
// ======================================================================

fn distribution_cubic(graph: &GraphInput, run: &RunOptions) -> Result<i32, String> {
    let g = load_graph(graph)?;
    let dist =
        counting::cubic_distribution(&g, run.guard, run.workers).map_err(|e| e.to_string())?;
    let report = DistributionReport::new(&g, &dist);
    let passed = dist.matches && dist.mean_zero;
    finish(&report, run.format.format, passed)
}

fn identity_cubic_hg(graph: &GraphInput, tau_text: &str, run: &RunOptions) -> Result<i32, String> {
    let g = load_graph(graph)?;
    let tau = parse_rational(tau_text).map_err(|e| format!("invalid --tau: {e}"))?;
    let identity = counting::cubic_hg_identity_check(&g, &tau, run.guard, run.workers)
        .map_err(|e| e.to_string())?;
    let report = IdentityReport::new(&g, &identity);
    let passed = identity.equal && identity.closed_matches;
    finish(&report, run.format.format, passed)
}

// ======================================================================
// Text rendering
// ======================================================================

/// Renders a JSON report as indented `key: value` lines; arrays of arrays
/// (matrices) become column-aligned rows.
fn render_text(value: &serde_json::Value) -> String {
    let mut out = String::new();
    render_value(value, 0, &mut out);
    out
}

fn render_value(value: &serde_json::Value, indent: usize, out: &mut String) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, item) in map {
                match item {
                    serde_json::Value::Object(_) => {
                        out.push_str(&format!("{:indent$}{key}:\n", "", indent = indent));
                        render_value(item, indent + 2, out);
                    }
                    serde_json::Value::Array(items)
                        if items.iter().any(|i| i.is_array() || i.is_object()) =>
                    {
                        out.push_str(&format!("{:indent$}{key}:\n", "", indent = indent));
                        render_value(item, indent + 2, out);
                    }
                    _ => {
                        out.push_str(&format!(
                            "{:indent$}{key}: {}\n",
                            "",
                            render_scalar(item),
                            indent = indent
                        ));
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            if let Some(rows) = as_string_matrix(items) {
                let widths = column_widths(&rows);
                for row in rows {
                    let line: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(cell, w)| format!("{cell:>w$}"))
                        .collect();
                    out.push_str(&format!(
                        "{:indent$}{}\n",
                        "",
                        line.join("  "),
                        indent = indent
                    ));
                }
            } else {
                for item in items {
                    match item {
                        serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                            out.push_str(&format!("{:indent$}-\n", "", indent = indent));
                            render_value(item, indent + 2, out);
                        }
                        _ => out.push_str(&format!(
                            "{:indent$}- {}\n",
                            "",
                            render_scalar(item),
                            indent = indent
                        )),
                    }
                }
            }
        }
        _ => out.push_str(&format!("{:indent$}{}\n", "", render_scalar(value), indent = indent)),
    }
}

fn render_scalar(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(render_scalar).collect();
            format!("[{}]", cells.join(", "))
        }
        other => other.to_string(),
    }
}

fn as_string_matrix(items: &[serde_json::Value]) -> Option<Vec<Vec<String>>> {
    if items.is_empty() {
        return None;
    }
    items
        .iter()
        .map(|row| {
            row.as_array()?
                .iter()
                .map(|cell| cell.as_str().map(str::to_owned))
                .collect()
        })
        .collect()
}

fn column_widths(rows: &[Vec<String>]) -> Vec<usize> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(String::len).max().unwrap_or(0))
        .collect()
}
