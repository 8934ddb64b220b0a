//! `sigdisc`: construct, analyze, certify and verify from the command line.
//!
//! JSON reports go to stdout, one-line summaries to stderr.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sigdisc::constructions::{block_graph, block_matrix, block_plan, block_plan_with_k, qpt_graph, sparse_union, tightness_matrix};
use sigdisc::discrepancy::{disc, DiscError, Search, DEFAULT_EXACT_CAP, DEFAULT_RESTARTS};
use sigdisc::formats::{parse_input, write_graph, write_matrix, Input};
use sigdisc::linalg::spectrum;
use sigdisc::quantization::{certify_sigma2_with, CertifyError, CertifyOptions};
use sigdisc::sampling::{gnp, task_rng};
use sigdisc::spectral_bounds::{chung_alpha_check, family_properties, thomason_exhaustive, thomason_sampled, SetSearch};
use sigdisc::suite::{run_criterion, union_family, SuiteParams, SuiteReport, CRITERIA};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_TOO_LARGE: u8 = 4;
const EXIT_CERTIFICATE: u8 = 5;
const EXIT_VIOLATION: u8 = 6;

#[derive(Parser)]
#[command(name = "sigdisc", version, about = "Discrepancy and second singular values of symmetric matrices and graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated matrix or graph to a file.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Report ρ′, σ₁, σ₂ and disc for a matrix or graph file.
    Analyze(AnalyzeArgs),
    /// Build the σ₂ certificate for a matrix or graph file.
    Certify(CertifyArgs),
    /// Run a bound verifier.
    Verify {
        #[command(subcommand)]
        suite: Verify,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The 2k×2k tightness matrix.
    Tightness {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The 2kp×2kp block matrix for a prime p.
    Blockmatrix {
        #[arg(long)]
        p: u64,
        /// Override the canonical k (smallest k with k⁵ ≥ p).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Matrix)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The circulant graph Q(p, t).
    Qpt {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// A graph plus a disjoint clique on ⌊pn⌋ vertices.
    Union {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// An Erdős–Rényi graph G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Matrix,
    Graph,
}

#[derive(Args)]
struct SearchArgs {
    /// Exhaustive search (the default).
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    /// Seeded local search with restarts; gives a lower bound.
    #[arg(long)]
    heuristic: bool,
    /// Heuristic restarts.
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest n for exhaustive search.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

impl SearchArgs {
    fn search(&self) -> Search {
        if self.heuristic {
            Search::Heuristic {
                restarts: self.iters,
                seed: self.seed,
            }
        } else {
            Search::Exact { cap: self.cap }
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct CertifyArgs {
    input: PathBuf,
    /// Restarts when n exceeds the exact cap.
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Verify {
    /// Edge-distribution bound under degree and co-degree hypotheses.
    Thomason {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        mu: f64,
        /// Every X with the worst Y of each size (n ≤ 20).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smallest α for the volume form of the edge-distribution bound.
    Chung {
        #[arg(long)]
        input: PathBuf,
        /// Also check this α.
        #[arg(long)]
        alpha: Option<f64>,
        /// All pairs (n ≤ 14).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// DISC(1) and EIG trends over the sparse union family.
    Family {
        #[arg(long, value_delimiter = ',', default_values_t = [50usize, 100, 200])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Every reproduction criterion.
    PaperSuite {
        #[arg(long, default_value_t = 19)]
        max_p: u64,
        #[arg(long, default_value_t = 64)]
        max_k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    bytes: usize,
    sha256: String,
}

#[derive(Serialize)]
struct RunReport {
    tool: &'static str,
    version: &'static str,
    command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    results: Value,
    timing: Value,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read_input(path: &Path) -> Result<(Input, InputDigest), Failure> {
    let bytes = std::fs::read(path).map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| fail(EXIT_USAGE, format!("{} is not UTF-8", path.display())))?;
    let input = parse_input(&text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let digest = InputDigest {
        path: path.display().to_string(),
        bytes: bytes.len(),
        sha256: sha256_hex(&bytes),
    };
    Ok((input, digest))
}

fn read_graph(path: &Path) -> Result<(sigdisc::Graph, InputDigest), Failure> {
    let (input, digest) = read_input(path)?;
    let g = input
        .graph()
        .ok_or_else(|| fail(EXIT_USAGE, format!("{} is not a graph or 0/1 adjacency matrix", path.display())))?;
    Ok((g, digest))
}

fn write_output(path: &Path, text: &str) -> Result<String, Failure> {
    std::fs::write(path, text).map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
    Ok(sha256_hex(text.as_bytes()))
}

/// Result of one command: JSON payload, stderr summary and exit code.
struct Outcome {
    results: Value,
    summary: String,
    input: Option<InputDigest>,
    seed: Option<u64>,
    code: u8,
}

impl Outcome {
    fn ok(results: Value, summary: String) -> Self {
        Self {
            results,
            summary,
            input: None,
            seed: None,
            code: 0,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn construct(what: &Construct) -> Result<Outcome, Failure> {
    let usage = |e: &dyn std::fmt::Display| fail(EXIT_USAGE, e);
    let (kind, path, text, mut info) = match what {
        Construct::Tightness { k, output } => {
            if *k == 0 {
                return Err(fail(EXIT_USAGE, "k must be positive"));
            }
            let a = tightness_matrix(*k);
            ("tightness", output, write_matrix(&a), json!({"k": k, "n": a.n()}))
        }
        Construct::Blockmatrix { p, k, format, output } => {
            let plan = match k {
                Some(k) => block_plan_with_k(*p, *k),
                None => block_plan(*p),
            }
            .map_err(|e| usage(&e))?;
            let text = match format {
                Format::Matrix => write_matrix(&block_matrix(&plan)),
                Format::Graph => write_graph(&block_graph(&plan)),
            };
            let info = json!({
                "p": p, "k": plan.k, "canonical": plan.canonical, "n": plan.n(), "row_sum": plan.row_sum(),
                "d": plan.d, "catalog": plan.catalog, "dij_max_gap": plan.dij_max_gap,
                "dij_bound": plan.dij_bound, "dij_violations": plan.dij_violations,
            });
            ("blockmatrix", output, text, info)
        }
        Construct::Qpt { p, t, output } => {
            let (g, d) = qpt_graph(*p, *t).map_err(|e| usage(&e))?;
            let info = json!({"p": p, "t": t, "n": g.n(), "edges": g.edge_count(), "degree": d});
            ("qpt", output, write_graph(&g), info)
        }
        Construct::Union { input, p, output } => {
            let (g, _) = read_graph(input)?;
            let u = sparse_union(&g, *p).map_err(|e| usage(&e))?;
            let info = json!({"p": p, "base_n": g.n(), "clique": u.n() - g.n(), "n": u.n(), "edges": u.edge_count()});
            ("union", output, write_graph(&u), info)
        }
        Construct::Gnp { n, p, seed, output } => {
            if !(0.0..=1.0).contains(p) {
                return Err(fail(EXIT_USAGE, format!("p must lie in [0, 1], got {p}")));
            }
            let g = gnp(&mut task_rng(*seed, 0), *n, *p);
            let info = json!({"n": n, "p": p, "seed": seed, "edges": g.edge_count()});
            ("gnp", output, write_graph(&g), info)
        }
    };
    let digest = write_output(path, &text)?;
    info["kind"] = json!(kind);
    info["output"] = json!(path.display().to_string());
    info["sha256"] = json!(digest);
    Ok(Outcome::ok(info, format!("{kind}: wrote {}", path.display())))
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome, Failure> {
    let (input, digest) = read_input(&args.input)?;
    let a = input.matrix();
    let n = a.n();
    let s = spectrum(&a).map_err(|e| fail(EXIT_USAGE, e))?;
    let d = disc(&a, args.search.search()).map_err(|e| match e {
        DiscError::TooLarge { .. } => fail(EXIT_TOO_LARGE, e),
        DiscError::NoRestarts => fail(EXIT_USAGE, e),
    })?;
    let ln_n = (n as f64).ln();
    let denom = d.value * ln_n;
    let ratio = (denom > 0.0).then(|| s.sigma2() / denom);
    let results = json!({
        "n": n,
        "kind": match input { Input::Matrix(_) => "matrix", Input::Graph(_) => "graph" },
        "rho_prime": a.rho_prime(),
        "sigma1": s.sigma(1),
        "sigma2": s.sigma2(),
        "eigenvalues": s.eigenvalues,
        "disc": d,
        "ratio_sigma2_over_disc_ln_n": ratio,
    });
    let summary = format!(
        "n = {n}: sigma2 = {:.6}, disc = {:.6} ({:?}), ratio = {}",
        s.sigma2(),
        d.value,
        d.mode,
        ratio.map_or("null".into(), |r| format!("{r:.6}"))
    );
    let seed = args.search.heuristic.then_some(args.search.seed);
    Ok(Outcome {
        input: Some(digest),
        seed,
        ..Outcome::ok(results, summary)
    })
}

fn certify(args: &CertifyArgs) -> Result<Outcome, Failure> {
    let (input, digest) = read_input(&args.input)?;
    let a = input.matrix();
    let options = CertifyOptions {
        exact_cap: args.cap,
        restarts: args.iters,
        seed: args.seed,
    };
    let (cert, code) = match certify_sigma2_with(&a, options) {
        Ok(c) => (c, 0),
        Err(CertifyError::LinkViolated { certificate, .. }) => (*certificate, EXIT_CERTIFICATE),
        Err(e @ CertifyError::Disc(DiscError::TooLarge { .. })) => return Err(fail(EXIT_TOO_LARGE, e)),
        Err(e) => return Err(fail(EXIT_USAGE, e)),
    };
    let broken: Vec<&str> = cert.links.iter().filter(|l| !l.holds).map(|l| l.name.as_str()).collect();
    let summary = if broken.is_empty() {
        format!(
            "n = {}: all {} links hold; sigma2 = {:.6}, disc = {:.6}, m = {}",
            cert.n,
            cert.links.len(),
            cert.sigma2,
            cert.disc.value,
            cert.m_realized
        )
    } else {
        format!("n = {}: links failed: {}", cert.n, broken.join(", "))
    };
    Ok(Outcome {
        input: Some(digest),
        seed: Some(args.seed),
        code,
        ..Outcome::ok(to_value(&cert), summary)
    })
}

fn verify(suite: &Verify) -> Result<Outcome, Failure> {
    match suite {
        Verify::Thomason { input, p, mu, exhaustive, samples, seed } => {
            let (g, digest) = read_graph(input)?;
            let report = if *exhaustive {
                thomason_exhaustive(&g, *p, *mu).map_err(|e| fail(EXIT_TOO_LARGE, e))?
            } else {
                thomason_sampled(&g, *p, *mu, *samples, *seed)
            };
            let summary = match &report.hypothesis_failed {
                Some(why) => format!("thomason: hypotheses fail ({why}); nothing checked"),
                None => format!(
                    "thomason: {} instances, {} violations",
                    report.instances, report.violation_count
                ),
            };
            Ok(Outcome {
                input: Some(digest),
                seed: (!exhaustive).then_some(*seed),
                code: if report.pass { 0 } else { EXIT_VIOLATION },
                ..Outcome::ok(to_value(&report), summary)
            })
        }
        Verify::Chung { input, alpha, exhaustive, samples, seed } => {
            let (g, digest) = read_graph(input)?;
            let search = if *exhaustive {
                SetSearch::Exhaustive
            } else {
                SetSearch::Sampled {
                    samples: *samples,
                    seed: *seed,
                }
            };
            let report = chung_alpha_check(&g, *alpha, search).map_err(|e| match e {
                sigdisc::spectral_bounds::BoundsError::TooLarge { .. } => fail(EXIT_TOO_LARGE, e),
                e => fail(EXIT_USAGE, e),
            })?;
            let summary = format!(
                "chung: {} pairs, minimal alpha = {:.6}, lambda_bar / alpha = {}",
                report.pairs,
                report.min_alpha,
                report.lambda_bar_over_alpha.map_or("n/a".into(), |r| format!("{r:.6}"))
            );
            Ok(Outcome {
                input: Some(digest),
                seed: (!exhaustive).then_some(*seed),
                code: if report.report.pass { 0 } else { EXIT_VIOLATION },
                ..Outcome::ok(to_value(&report), summary)
            })
        }
        Verify::Family { sizes, samples, seed } => {
            let members = union_family(sizes, *seed).map_err(|e| fail(EXIT_USAGE, e))?;
            let report = family_properties(&members, *samples, *seed).map_err(|e| fail(EXIT_USAGE, e))?;
            let summary = format!(
                "family: sigma2/pn = {:?}, DISC(1) ratio decreasing = {}",
                report.members.iter().map(|m| format!("{:.4}", m.sigma2_ratio)).collect::<Vec<_>>(),
                report.disc1_decreasing
            );
            Ok(Outcome {
                seed: Some(*seed),
                ..Outcome::ok(to_value(&report), summary)
            })
        }
        Verify::PaperSuite { max_p, max_k, seed, only } => {
            let params = SuiteParams {
                seed: *seed,
                max_p: *max_p,
                max_k: *max_k,
                ..SuiteParams::default()
            };
            let ids: Vec<u32> = if only.is_empty() {
                CRITERIA.iter().map(|c| c.0).collect()
            } else {
                only.clone()
            };
            let mut criteria = Vec::new();
            let mut lines = Vec::new();
            for id in ids {
                let r = run_criterion(id, &params).map_err(|e| fail(EXIT_USAGE, e))?;
                lines.push(format!("criterion {id} ({}): {}", r.name, if r.pass { "pass" } else { "FAIL" }));
                criteria.push(r);
            }
            let report = SuiteReport {
                pass: criteria.iter().all(|c| c.pass),
                params,
                criteria,
            };
            Ok(Outcome {
                seed: Some(*seed),
                code: if report.pass { 0 } else { EXIT_VIOLATION },
                ..Outcome::ok(to_value(&report), lines.join("\n"))
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Construct { what } => construct(what),
        Command::Analyze(args) => analyze(args),
        Command::Certify(args) => certify(args),
        Command::Verify { suite } => verify(suite),
    };
    match outcome {
        Ok(out) => {
            let report = RunReport {
                tool: "sigdisc",
                version: env!("CARGO_PKG_VERSION"),
                command: std::env::args().skip(1).collect(),
                input: out.input,
                seed: out.seed,
                results: out.results,
                timing: json!({"elapsed_seconds": start.elapsed().as_secs_f64()}),
            };
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            // A closed stdout (e.g. piped into `head`) is not an error here.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
