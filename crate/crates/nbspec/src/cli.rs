//! Command-line front end: graph ingestion, verification suites, and
//! machine-readable spectra.
//!
//! Output is JSON on stdout with deterministic key order and floats fixed
//! at 12 significant digits, so identical invocations produce identical
//! bytes. Exit codes: 0 all checks pass, 1 usage or input error, 2 at
//! least one verification failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::graph::{
    complete_graph, cycle_graph, join_at_vertex, path_graph, pinwheel_graph, random_tree,
    star_graph, Graph,
};
use crate::linalg::{self, Matrix};
use crate::nb::{
    build_decomposition, build_operators, verify_intertwining, verify_product_identities,
    NbOperators,
};
use crate::report::{round_sig, VerificationReport};
use crate::{detect, oracle, spectra};

const DEFAULT_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "nbspec",
    version,
    about = "Non-backtracking spectra: compute, classify, verify",
    after_help = "Graph generators: cycle:n  path:n  complete:n  star:n  pinwheel:p,k  \
                  tree:seed,n  join:<spec>@v+<spec>@w\n\
                  NBSPEC_TOL overrides the default tolerance 1e-6."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of one of the graph's operator matrices.
    Spectrum {
        /// Generator spec, e.g. cycle:5 or join:cycle:3@0+path:4@0
        #[arg(long, conflicts_with = "file")]
        gen: Option<String>,
        /// Edge-list file: first line n, then one "u v" pair per line
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Target::B)]
        target: Target,
        /// Also write the target matrix in Matrix Market format
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
    /// Run verification suites on one graph.
    Verify {
        #[arg(long, conflicts_with = "file")]
        gen: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Run a suite over every labeled graph on n vertices.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    B,
    K,
    A,
    C,
}

impl Target {
    fn label(self) -> &'static str {
        match self {
            Target::B => "B",
            Target::K => "K",
            Target::A => "A",
            Target::C => "C",
        }
    }

    fn matrix(self, ops: &NbOperators) -> &Matrix {
        match self {
            Target::B => &ops.b,
            Target::K => &ops.k,
            Target::A => &ops.a,
            Target::C => &ops.c,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Ihara,
    Decomposition,
    Bounds,
    Detect,
    Oracle,
}

impl Suite {
    fn label(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Ihara => "ihara",
            Suite::Decomposition => "decomposition",
            Suite::Bounds => "bounds",
            Suite::Detect => "detect",
            Suite::Oracle => "oracle",
        }
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are "errors" to clap but not to us
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let tol = match tolerance_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("nbspec: {msg}");
            return 1;
        }
    };
    match execute(cli.command, tol) {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("reports serialize");
            match writeln!(std::io::stdout(), "{text}") {
                Ok(()) => code,
                // a closed pipe (e.g. `nbspec ... | head`) is not our error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    eprintln!("nbspec: cannot write to stdout: {e}");
                    1
                }
            }
        }
        Err(msg) => {
            eprintln!("nbspec: {msg}");
            1
        }
    }
}

fn tolerance_from_env() -> Result<f64, String> {
    match std::env::var("NBSPEC_TOL") {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(raw) => {
            let t: f64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("NBSPEC_TOL is not a number: {raw:?}"))?;
            if t.is_finite() && t > 0.0 {
                Ok(t)
            } else {
                Err(format!(
                    "NBSPEC_TOL must be a positive finite number, got {raw:?}"
                ))
            }
        }
    }
}

fn execute(command: Command, tol: f64) -> Result<(Value, i32), String> {
    match command {
        Command::Spectrum {
            gen,
            file,
            target,
            matrix_out,
        } => {
            let g = load_graph(gen.as_deref(), file.as_deref())?;
            cmd_spectrum(&g, target, matrix_out.as_deref(), tol)
        }
        Command::Verify { gen, file, suite } => {
            let g = load_graph(gen.as_deref(), file.as_deref())?;
            cmd_verify(&g, suite, tol)
        }
        Command::Sweep { n, suite } => cmd_sweep(n, suite, tol),
    }
}

fn load_graph(gen: Option<&str>, file: Option<&std::path::Path>) -> Result<Graph, String> {
    match (gen, file) {
        (Some(spec), None) => parse_generator(spec, true),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Graph::from_edge_list(&text).map_err(|e| e.to_string())
        }
        _ => Err("exactly one of --gen or --file is required".to_string()),
    }
}

/// The generator mini-grammar. Joins take two non-join sub-specs:
/// join:<spec>@v+<spec>@w glues vertex w of the second onto vertex v of
/// the first.
fn parse_generator(spec: &str, allow_join: bool) -> Result<Graph, String> {
    let bad = |msg: &str| format!("bad generator {spec:?}: {msg}");
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| bad("expected name:args"))?;
    let uint = |s: &str| -> Result<usize, String> {
        s.parse().map_err(|_| bad("expected a nonnegative integer"))
    };
    let graph = match head {
        "cycle" => cycle_graph(uint(rest)?),
        "path" => path_graph(uint(rest)?),
        "complete" => complete_graph(uint(rest)?),
        "star" => star_graph(uint(rest)?),
        "pinwheel" => {
            let (p, k) = rest.split_once(',').ok_or_else(|| bad("expected p,k"))?;
            pinwheel_graph(uint(p)?, uint(k)?)
        }
        "tree" => {
            let (seed, n) = rest.split_once(',').ok_or_else(|| bad("expected seed,n"))?;
            let seed: u64 = seed.parse().map_err(|_| bad("expected a seed"))?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            random_tree(&mut rng, uint(n)?)
        }
        "join" => {
            if !allow_join {
                return Err(bad("joins cannot nest"));
            }
            let (left, right) = rest.split_once('+').ok_or_else(|| bad("expected a+b"))?;
            let split_at = |part: &str| -> Result<(Graph, usize), String> {
                let (sub, v) = part
                    .rsplit_once('@')
                    .ok_or_else(|| bad("expected spec@vertex"))?;
                Ok((parse_generator(sub, false)?, uint(v)?))
            };
            let (g1, v1) = split_at(left)?;
            let (g2, v2) = split_at(right)?;
            join_at_vertex(&g1, v1, &g2, v2)
        }
        _ => return Err(bad("unknown generator")),
    };
    graph.map_err(|e| format!("bad generator {spec:?}: {e}"))
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "m": g.m() })
}

fn complex_json(z: Complex64) -> Value {
    json!([round_sig(z.re), round_sig(z.im)])
}

fn cmd_spectrum(
    g: &Graph,
    target: Target,
    matrix_out: Option<&std::path::Path>,
    tol: f64,
) -> Result<(Value, i32), String> {
    let ops = build_operators(g);
    let matrix = target.matrix(&ops);
    if let Some(path) = matrix_out {
        std::fs::write(path, matrix.to_matrix_market())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let sigma = linalg::spectrum_of_integer_matrix(matrix, tol).map_err(|e| e.to_string())?;
    let values: Vec<Value> = sigma.values().iter().map(|&z| complex_json(z)).collect();
    let clusters: Vec<Value> = sigma
        .clusters()
        .iter()
        .map(|&(z, mult)| json!({ "value": complex_json(z), "multiplicity": mult }))
        .collect();
    let out = json!({
        "graph": graph_json(g),
        "target": target.label(),
        "dimension": sigma.len(),
        "values": values,
        "clusters": clusters,
        "spectral_radius": round_sig(sigma.spectral_radius()),
        "min_modulus": round_sig(sigma.min_modulus()),
        "tolerance": tol,
    });
    Ok((out, 0))
}

fn cmd_verify(g: &Graph, suite: Suite, tol: f64) -> Result<(Value, i32), String> {
    let outcome = run_suite(g, suite, tol).map_err(|e| e.to_string())?;
    let status = if outcome.failures == 0 {
        "pass"
    } else {
        "fail"
    };
    let out = json!({
        "graph": graph_json(g),
        "suite": suite.label(),
        "reports": outcome.reports,
        "failures": outcome.failures,
        "status": status,
        "tolerance": tol,
    });
    Ok((out, if outcome.failures == 0 { 0 } else { 2 }))
}

fn cmd_sweep(n: usize, suite: Suite, tol: f64) -> Result<(Value, i32), String> {
    let sweep = oracle::exhaustive_graph_sweep(n).map_err(|e| e.to_string())?;
    let mut graphs = 0usize;
    let mut reports = 0usize;
    let mut failures = 0usize;
    let mut first_failure = Value::Null;
    for g in sweep {
        graphs += 1;
        let outcome = run_suite(&g, suite, tol).map_err(|e| e.to_string())?;
        reports += outcome.reports.len();
        if outcome.failures > 0 {
            if first_failure.is_null() {
                let failing: Vec<Value> = outcome
                    .reports
                    .iter()
                    .filter(|r| r["status"] == "fail" || r["holds"] == false)
                    .cloned()
                    .collect();
                first_failure = json!({
                    "graph": { "n": g.n(), "edges": g.edges() },
                    "reports": failing,
                });
            }
            failures += outcome.failures;
        }
    }
    let out = json!({
        "n": n,
        "suite": suite.label(),
        "graphs": graphs,
        "reports": reports,
        "failures": failures,
        "first_failure": first_failure,
        "tolerance": tol,
    });
    Ok((out, if failures == 0 { 0 } else { 2 }))
}

struct SuiteOutcome {
    reports: Vec<Value>,
    failures: usize,
}

fn push_report(reports: &mut Vec<Value>, failures: &mut usize, r: VerificationReport) {
    if r.status == crate::report::Status::Fail {
        *failures += 1;
    }
    reports.push(serde_json::to_value(&r).expect("report serializes"));
}

fn push_bound(reports: &mut Vec<Value>, failures: &mut usize, b: crate::report::BoundReport) {
    if b.hypothesis_satisfied && !b.holds() {
        *failures += 1;
    }
    reports.push(serde_json::to_value(&b).expect("report serializes"));
}

fn run_suite(g: &Graph, suite: Suite, tol: f64) -> crate::Result<SuiteOutcome> {
    let mut reports: Vec<Value> = Vec::new();
    let mut failures = 0usize;

    let ops = build_operators(g);

    if matches!(suite, Suite::All | Suite::Ihara) {
        push_report(
            &mut reports,
            &mut failures,
            spectra::ihara_check(g, &spectra::DEFAULT_IHARA_SAMPLES)?,
        );
    }

    if matches!(suite, Suite::All | Suite::Decomposition) {
        push_report(
            &mut reports,
            &mut failures,
            verify_product_identities(&ops, tol),
        );
        push_report(&mut reports, &mut failures, verify_intertwining(&ops, tol));
        let decomp = match build_decomposition(&ops, tol) {
            Ok(d) => {
                let spectrum_report = if d.block.rows() == ops.b.rows() {
                    let sigma_b = linalg::spectrum_of_integer_matrix(&ops.b, tol)?;
                    let sigma_block = linalg::spectrum_of_integer_matrix(&d.block, tol)?;
                    let outcome =
                        linalg::multiset_match(sigma_b.values(), sigma_block.values(), tol);
                    if outcome.ok {
                        VerificationReport::pass(
                            "decomposition-spectrum",
                            Some(outcome.max_distance),
                        )
                    } else {
                        VerificationReport::fail(
                            "decomposition-spectrum",
                            Some(outcome.max_distance),
                            outcome.failure,
                        )
                    }
                } else {
                    VerificationReport::not_applicable(
                        "decomposition-spectrum",
                        "tree components make the block strictly larger than B",
                    )
                };
                push_report(&mut reports, &mut failures, spectrum_report);
                VerificationReport::pass("decomposition", Some(d.residual))
                    .with_metadata("plus-one-dims", format!("{:?}", d.plus_one_dims))
                    .with_metadata("minus-one-dims", format!("{:?}", d.minus_one_dims))
                    .with_metadata(
                        "surplus",
                        format!("+1: {}, -1: {}", d.surplus_plus_one, d.surplus_minus_one),
                    )
            }
            Err(e) => VerificationReport::fail("decomposition", None, Some(e.to_string())),
        };
        push_report(&mut reports, &mut failures, decomp);
    }

    if matches!(suite, Suite::All | Suite::Bounds) {
        for bound in spectra::spectral_radius_bounds(g)? {
            push_bound(&mut reports, &mut failures, bound);
        }
        let sigma_b = linalg::spectrum_of_integer_matrix(&ops.b, tol)?;
        push_bound(
            &mut reports,
            &mut failures,
            spectra::check_lower_bound_modulus(g, &sigma_b),
        );
        let sigma_k = linalg::spectrum_of_integer_matrix(&ops.k, tol)?;
        push_bound(
            &mut reports,
            &mut failures,
            spectra::check_rho_k_gt_1(g, &sigma_k),
        );
        push_report(
            &mut reports,
            &mut failures,
            spectra::check_perron_positivity(g)?,
        );
    }

    if matches!(suite, Suite::All | Suite::Detect) {
        let result = detect::detect_structure(g, tol)?;
        push_report(
            &mut reports,
            &mut failures,
            agreement_report(
                "detect-components",
                result.components_agree,
                result.detected_components.to_string(),
                result.truth.components.to_string(),
            ),
        );
        push_report(
            &mut reports,
            &mut failures,
            agreement_report(
                "detect-degree1",
                result.degree1_agree,
                result.detected_degree1.to_string(),
                result.truth.degree1_count.to_string(),
            ),
        );
        let bip = match &result.detected_bipartite {
            None => VerificationReport::not_applicable(
                "detect-bipartite",
                "the spectral bipartiteness tests assume a connected graph",
            ),
            Some(d) => agreement_report(
                "detect-bipartite",
                result.bipartite_agree,
                format!(
                    "minus-one: {}, symmetry: {}, extremes: {}",
                    d.via_minus_one, d.via_symmetry, d.via_extremes
                ),
                result.truth.bipartite.to_string(),
            ),
        };
        push_report(&mut reports, &mut failures, bip);
        push_report(
            &mut reports,
            &mut failures,
            detect::verify_k_eigvec_form(&ops.k, tol)?,
        );
    }

    if matches!(suite, Suite::All | Suite::Oracle) {
        if g.m() > 20 {
            push_report(
                &mut reports,
                &mut failures,
                VerificationReport::not_applicable(
                    "walk-count-power",
                    "graph exceeds the brute-force walk budget (m > 20)",
                ),
            );
        } else {
            for k in [2usize, 4] {
                push_report(
                    &mut reports,
                    &mut failures,
                    oracle::verify_bk_equals_walkcounts(g, k)?,
                );
            }
        }
        if g.is_tree() && ops.b.rows() <= 20 {
            push_report(
                &mut reports,
                &mut failures,
                oracle::charpoly_spotcheck(&ops.b, &[0.5, 2.0, -1.0])?,
            );
        }
    }

    Ok(SuiteOutcome { reports, failures })
}

fn agreement_report(
    name: &str,
    agree: bool,
    detected: String,
    truth: String,
) -> VerificationReport {
    let report = if agree {
        VerificationReport::pass(name, None)
    } else {
        VerificationReport::fail(
            name,
            None,
            Some(format!("detected {detected} but ground truth is {truth}")),
        )
    };
    report
        .with_metadata("detected", detected)
        .with_metadata("ground-truth", truth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_grammar_round_trips() {
        assert_eq!(parse_generator("cycle:5", true).unwrap().n(), 5);
        assert_eq!(parse_generator("path:4", true).unwrap().m(), 3);
        assert_eq!(parse_generator("complete:4", true).unwrap().m(), 6);
        assert_eq!(parse_generator("star:4", true).unwrap().n(), 5);
        assert_eq!(parse_generator("pinwheel:2,3", true).unwrap().n(), 5);
        let t = parse_generator("tree:7,9", true).unwrap();
        assert!(t.is_tree());
        let j = parse_generator("join:cycle:3@0+path:3@0", true).unwrap();
        assert_eq!(j.n(), 5);
        assert_eq!(j.m(), 5);
    }

    #[test]
    fn generator_grammar_rejects_malformed_specs() {
        for bad in [
            "cycle",
            "cycle:x",
            "blob:3",
            "pinwheel:2",
            "join:cycle:3@0",
            "join:join:cycle:3@0+cycle:3@0@0+path:2@0",
            "tree:1",
        ] {
            assert!(parse_generator(bad, true).is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn tree_generator_is_seed_deterministic() {
        let a = parse_generator("tree:42,8", true).unwrap();
        let b = parse_generator("tree:42,8", true).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert!(a.is_tree());
    }

    #[test]
    fn verify_all_passes_on_k4() {
        let g = complete_graph(4).unwrap();
        let outcome = run_suite(&g, Suite::All, DEFAULT_TOL).unwrap();
        assert_eq!(outcome.failures, 0);
        assert!(outcome.reports.len() >= 10);
    }

    #[test]
    fn verify_detect_on_odd_cycle() {
        let g = cycle_graph(5).unwrap();
        let outcome = run_suite(&g, Suite::Detect, DEFAULT_TOL).unwrap();
        assert_eq!(outcome.failures, 0);
        let bip = outcome
            .reports
            .iter()
            .find(|r| r["name"] == "detect-bipartite")
            .unwrap();
        assert_eq!(bip["metadata"]["ground-truth"], "false");
        assert_eq!(bip["status"], "pass");
    }

    #[test]
    fn suite_handles_edgeless_and_disconnected_graphs() {
        let lonely = Graph::new(3, &[]).unwrap();
        let outcome = run_suite(&lonely, Suite::All, DEFAULT_TOL).unwrap();
        assert_eq!(outcome.failures, 0);

        let two_parts = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let outcome = run_suite(&two_parts, Suite::All, DEFAULT_TOL).unwrap();
        assert_eq!(outcome.failures, 0);
    }
}
