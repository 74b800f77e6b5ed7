//! Command-line surface over the library: exact invariants, criticality and
//! witness checks, duality transforms, arrow-notation verification, bound
//! tables, extremal search, and certificate verification.
//!
//! Exit codes: 0 pass, 1 semantic fail or refuted claim, 2 input error.
//! Output is deterministic; identical invocations produce identical bytes.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use taucrit::arrow::{self, ArrowClaim};
use taucrit::critical;
use taucrit::duality;
use taucrit::extremal::{self, SearchMode};
use taucrit::hypergraph::Hypergraph;
use taucrit::solve;
use taucrit::text;

#[derive(Parser)]
#[command(
    name = "taucrit",
    version,
    about = "Exact solvers and extremal search for tau-critical uniform hypergraphs"
)]
struct Cli {
    /// Output style: aligned text or key<TAB>value records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a hypergraph: n, edge count, tau, alpha, omega, and the
    /// complementarity identities.
    Stats(InputArgs),
    /// Verdict on tau-criticality, vertex-criticality, or witness status.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        kind: CheckKind,
        /// Cap on enumerated maximum cliques.
        #[arg(long, default_value_t = solve::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Complement, or one direction of the witness/criticality equivalence.
    /// The result hypergraph goes to stdout, the trace to stderr.
    Transform {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        direction: TransformDirection,
        /// Also write the trace to this file.
        #[arg(long)]
        trace_file: Option<PathBuf>,
        #[arg(long, default_value_t = solve::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Verify a clique family as a witness for (n,k,t)^r -/-> u.
    Arrow {
        #[command(flatten)]
        input: InputArgs,
        /// Claimed transversal bound t.
        #[arg(long)]
        t: u32,
        /// Claimed clique bound u.
        #[arg(long)]
        u: u32,
        /// Claimed order n; defaults to the size of the family union.
        #[arg(long)]
        n: Option<u32>,
        /// Claimed minimum set size k; defaults to the family header value.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Search for the maximum order of an r-uniform tau-critical hypergraph
    /// with transversal number t, emitting certificates.
    Search {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Node budget (candidate extensions evaluated).
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        /// Certificate store directory; hits are appended there.
        #[arg(long)]
        store: Option<PathBuf>,
        /// Worker threads for exhaustive mode; 0 = all cores. Budgeted mode
        /// is always sequential so budget cutoffs stay deterministic.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Exact bound table, one row per t.
    Bounds {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        t_min: u64,
        #[arg(long, default_value_t = 10)]
        t_max: u64,
        /// Certificate store to report the best known order per row.
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Re-verify a certificate file from scratch.
    Verify(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input path, or '-' for standard input.
    input: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    TauCritical,
    VertexCritical,
    Witness,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformDirection {
    Complement,
    /// critical-to-witness: complement a tau-critical hypergraph.
    ToWitness,
    /// witness-to-critical: extract a spanning tau-critical hypergraph.
    ToCritical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Budgeted,
}

/// Two-column output that renders as aligned text or tab-separated records.
struct Sink {
    format: Format,
    rows: Vec<(String, String)>,
}

impl Sink {
    fn new(format: Format) -> Self {
        Sink {
            format,
            rows: Vec::new(),
        }
    }

    fn row(&mut self, key: &str, value: impl ToString) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    fn flush(self) {
        let mut out = String::new();
        match self.format {
            Format::Records => {
                for (k, v) in &self.rows {
                    let _ = writeln!(out, "{k}\t{v}");
                }
            }
            Format::Human => {
                let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.rows {
                    let _ = writeln!(out, "{k:<width$}  {v}");
                }
            }
        }
        print!("{out}");
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn load_hypergraph(path: &str) -> Result<Hypergraph, String> {
    let contents = read_input(path)?;
    text::parse(&contents).map_err(|e| e.to_string())
}

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = match cli.command {
        Command::Stats(input) => cmd_stats(&input.input, format),
        Command::Check { input, kind, cap } => cmd_check(&input.input, kind, cap, format),
        Command::Transform {
            input,
            direction,
            trace_file,
            cap,
        } => cmd_transform(&input.input, direction, trace_file, cap),
        Command::Arrow { input, t, u, n, k } => cmd_arrow(&input.input, t, u, n, k, format),
        Command::Search {
            r,
            t,
            mode,
            budget,
            store,
            workers,
        } => cmd_search(r, t, mode, budget, store, workers, format),
        Command::Bounds {
            r,
            t_min,
            t_max,
            store,
        } => cmd_bounds(r, t_min, t_max, store, format),
        Command::Verify(input) => cmd_verify(&input.input, format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn cmd_stats(input: &str, format: Format) -> Result<u8, String> {
    let h = load_hypergraph(input)?;
    let tau = solve::transversal_number(&h);
    let alpha = solve::independence_number(&h);
    let omega = solve::clique_number(&h).map_err(|e| e.to_string())?;
    let gallai = duality::gallai_check(&h).map_err(|e| e.to_string())?;

    let mut sink = Sink::new(format);
    sink.row("r", h.r());
    sink.row("n", h.n());
    sink.row("edges", h.edge_count());
    sink.row("isolated", h.isolated_vertices());
    sink.row("tau", tau.value);
    sink.row("tau_witness", tau.witness);
    sink.row("alpha", alpha.value);
    sink.row("alpha_witness", alpha.witness);
    sink.row("omega", omega.value);
    sink.row("omega_witness", omega.witness);
    sink.row(
        "omega_convention",
        "sets smaller than r are vacuous cliques; omega >= min(n, r-1)",
    );
    sink.row("tau_complement", gallai.tau_complement);
    sink.row("omega_complement", gallai.omega_complement);
    sink.row("identity_alpha_plus_tau", verdict(gallai.identity_alpha));
    sink.row(
        "identity_omega_complement_plus_tau",
        verdict(gallai.identity_omega_complement),
    );
    sink.row(
        "identity_omega_plus_tau_complement",
        verdict(gallai.identity_omega),
    );
    let ok = gallai.all_hold();
    sink.flush();
    if !ok {
        // The identities are theorems; a violation means the solvers disagree.
        eprintln!("error: complementarity identities violated — solver defect");
        return Ok(EXIT_FAIL);
    }
    Ok(0)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "VIOLATED"
    }
}

fn pass_fail(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_check(input: &str, kind: CheckKind, cap: usize, format: Format) -> Result<u8, String> {
    let h = load_hypergraph(input)?;
    let mut sink = Sink::new(format);
    let pass = match kind {
        CheckKind::TauCritical => {
            let report = critical::criticality(&h);
            sink.row("kind", "tau-critical");
            sink.row("tau", report.tau);
            sink.row("isolated", report.isolated);
            for drop in &report.per_edge {
                sink.row(
                    &format!("tau_without {}", drop.edge),
                    format!(
                        "{} ({})",
                        drop.tau_without,
                        if report.tau > 0 && drop.tau_without == report.tau - 1 {
                            "drops"
                        } else {
                            "does not drop"
                        }
                    ),
                );
            }
            sink.row("verdict", pass_fail(report.is_tau_critical));
            report.is_tau_critical
        }
        CheckKind::VertexCritical => {
            let report = critical::criticality(&h);
            sink.row("kind", "vertex-critical");
            sink.row("tau", report.tau);
            for usage in &report.per_vertex {
                sink.row(
                    &format!("vertex {}", usage.vertex),
                    format!(
                        "in_some_minimum={} out_of_some_minimum={}",
                        usage.in_some_minimum, usage.out_of_some_minimum
                    ),
                );
            }
            sink.row("verdict", pass_fail(report.is_vertex_critical));
            report.is_vertex_critical
        }
        CheckKind::Witness => {
            let report = critical::witness_report(&h, cap).map_err(|e| e.to_string())?;
            sink.row("kind", "witness");
            sink.row("omega", report.k);
            sink.row("max_cliques", report.cliques.len());
            for clique in &report.cliques {
                sink.row("clique", clique);
            }
            sink.row("intersection", report.intersection);
            sink.row("union", report.union);
            sink.row("verdict", pass_fail(report.is_witness));
            report.is_witness
        }
    };
    sink.flush();
    Ok(if pass { 0 } else { EXIT_FAIL })
}

fn cmd_transform(
    input: &str,
    direction: TransformDirection,
    trace_file: Option<PathBuf>,
    cap: usize,
) -> Result<u8, String> {
    let h = load_hypergraph(input)?;
    let (output, trace_text) = match direction {
        TransformDirection::Complement => {
            let c = h.complement().map_err(|e| e.to_string())?;
            (c, String::new())
        }
        TransformDirection::ToWitness => match duality::critical_to_witness(&h, cap) {
            Ok(trace) => {
                let text = duality::transcript_lines(&trace);
                (trace.output, text)
            }
            Err(e @ duality::DualityError::NotTauCritical { .. }) => {
                eprintln!("precondition failed: {e}");
                return Ok(EXIT_FAIL);
            }
            Err(e) => return Err(e.to_string()),
        },
        TransformDirection::ToCritical => match duality::witness_to_critical(&h, cap) {
            Ok(trace) => {
                let text = duality::transcript_lines(&trace);
                (trace.output, text)
            }
            Err(e @ duality::DualityError::NotAWitness { .. }) => {
                eprintln!("precondition failed: {e}");
                return Ok(EXIT_FAIL);
            }
            Err(e) => return Err(e.to_string()),
        },
    };
    print!("{}", text::serialize(&output));
    if !trace_text.is_empty() {
        eprint!("{trace_text}");
        if let Some(path) = trace_file {
            std::fs::write(&path, &trace_text)
                .map_err(|e| format!("writing {}: {e}", path.display()))?;
        }
    }
    Ok(0)
}

fn cmd_arrow(
    input: &str,
    t: u32,
    u: u32,
    n: Option<u32>,
    k: Option<u32>,
    format: Format,
) -> Result<u8, String> {
    let contents = read_input(input)?;
    let family = text::parse_family(&contents).map_err(|e| e.to_string())?;
    let claim = ArrowClaim {
        n: n.unwrap_or_else(|| family.n()),
        k: k.unwrap_or_else(|| family.k()),
        t,
        u,
    };
    let report = arrow::verify_negative_arrow(&family, claim).map_err(|e| e.to_string())?;
    let mut sink = Sink::new(format);
    sink.row("r", report.r);
    sink.row(
        "claim",
        format!(
            "({},{},{})^{} -/-> {}",
            claim.n, claim.k, claim.t, report.r, claim.u
        ),
    );
    if report.relaxed_r {
        sink.row("note", "r=2 lies outside the classical 3<=r range");
    }
    for clause in &report.clauses {
        sink.row(
            &format!("clause {}", clause.name),
            format!("{} ({})", pass_fail(clause.pass), clause.detail),
        );
    }
    sink.row("verdict", pass_fail(report.pass));
    sink.flush();
    Ok(if report.pass { 0 } else { EXIT_FAIL })
}

fn cmd_search(
    r: u32,
    t: u32,
    mode: ModeArg,
    budget: u64,
    store: Option<PathBuf>,
    workers: usize,
    format: Format,
) -> Result<u8, String> {
    if workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let mode = match mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Budgeted => SearchMode::Budgeted,
    };
    let output = match extremal::search_v_max(r, t, mode, budget, true) {
        Ok(output) => output,
        Err(e @ extremal::SearchError::ExhaustiveInfeasible { .. }) => {
            eprintln!("error: {e}");
            return Ok(EXIT_FAIL);
        }
        Err(extremal::SearchError::BudgetExhausted { budget, partial }) => {
            eprintln!(
                "error: node budget of {budget} exhausted in exhaustive mode; \
                 rerun with --mode budgeted or a larger --budget"
            );
            eprintln!(
                "partial progress: nodes={} classes={} best={:?}",
                partial.nodes_explored, partial.classes_expanded, partial.best_order
            );
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(e.to_string()),
    };
    let record = &output.record;

    let mut stored = 0usize;
    if let Some(dir) = &store {
        for cert in &output.certificates {
            extremal::store_certificate(dir, cert).map_err(|e| e.to_string())?;
            stored += 1;
        }
    }

    let mut sink = Sink::new(format);
    sink.row("r", record.r);
    sink.row("t", record.t);
    sink.row("mode", record.mode.as_str());
    sink.row("canvas", record.canvas);
    sink.row("nodes_explored", record.nodes_explored);
    sink.row("classes_expanded", record.classes_expanded);
    sink.row("isomorph_rejections", record.isomorph_rejections);
    sink.row("hits", record.hits);
    sink.row(
        "best_order",
        record
            .best_order
            .map_or("none".to_string(), |n| n.to_string()),
    );
    if let Some(code) = &record.best_code {
        sink.row("best_canonical", code.to_hex());
    }
    sink.row("exhaustive", record.exhaustive);
    if stored > 0 {
        sink.row("certificates_stored", stored);
    }

    // Gap report for this cell.
    let table = extremal::bounds(r, t as u64).map_err(|e| e.to_string())?;
    let best_known = match &store {
        Some(dir) => extremal::best_verified_order(dir, r, t)
            .map_err(|e| e.to_string())?
            .max(record.best_order),
        None => record.best_order,
    };
    let exhaustive_max = if record.exhaustive {
        record.best_order
    } else {
        None
    };
    let gap = extremal::gap_report(table, best_known, exhaustive_max);
    sink.row("lower_bound", gap.bounds.lower_gylt);
    sink.row("upper_bound", gap.bounds.upper_gylt);
    sink.row(
        "best_known_order",
        best_known.map_or("none".to_string(), |n| n.to_string()),
    );
    sink.row("equality_status", gap.status.as_str());
    if !gap.in_question_range {
        sink.row(
            "equality_note",
            "the lower-bound equality question is posed for t >= r",
        );
    }
    sink.flush();
    Ok(0)
}

fn cmd_bounds(
    r: u32,
    t_min: u64,
    t_max: u64,
    store: Option<PathBuf>,
    format: Format,
) -> Result<u8, String> {
    if t_min < 1 || t_max < t_min {
        return Err(format!("invalid t range {t_min}..{t_max}"));
    }
    let mut sink = Sink::new(format);
    for t in t_min..=t_max {
        let table = extremal::bounds(r, t).map_err(|e| e.to_string())?;
        let mut row = format!("lower={}", table.lower_gylt);
        if let Some(r3) = &table.r3 {
            let _ = write!(
                row,
                " conjecture={} tuza={} gylt={} sp={}",
                r3.conjecture, r3.tuza_upper, r3.gylt_upper, r3.sp_upper
            );
        }
        let _ = write!(row, " upper={}", table.upper_gylt);
        if let Some(dir) = &store {
            let best =
                extremal::best_verified_order(dir, r, t as u32).map_err(|e| e.to_string())?;
            let _ = write!(
                row,
                " best_known={}",
                best.map_or("none".to_string(), |n| n.to_string())
            );
        }
        sink.row(&format!("t={t}"), row);
    }
    sink.flush();
    Ok(0)
}

fn cmd_verify(input: &str, format: Format) -> Result<u8, String> {
    let contents = read_input(input)?;
    let cert = extremal::parse_certificate(&contents).map_err(|e| e.to_string())?;
    let report = extremal::verify_certificate(&cert);
    let mut sink = Sink::new(format);
    sink.row("claim", format!("r={} t={} n={}", cert.r, cert.t, cert.n));
    sink.row("canonical", cert.canonical.to_hex());
    for clause in &report.clauses {
        sink.row(
            &format!("clause {}", clause.name),
            format!("{} ({})", pass_fail(clause.pass), clause.detail),
        );
    }
    sink.row(
        "verdict",
        if report.accepted { "accepted" } else { "rejected" },
    );
    if let Some(first) = report.first_failure() {
        sink.row("first_failure", first.name);
    }
    sink.flush();
    Ok(if report.accepted { 0 } else { EXIT_FAIL })
}
