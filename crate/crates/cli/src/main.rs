//! `l1cert`: exact certification of sparsest and least l1-norm
//! solutions of linear systems, over rational arithmetic.

mod problem;
mod report;

use clap::{Parser, Subcommand};
use l1cert_core::{
    certify_unique_l1, classify_system, default_k_max, dual_certificate_from_eta, l1_norm, mutual_coherence, rsp_at_point, rsp_order, solve_min_l1, spark, sparsest_solutions,
    uniform_recovery_oracle, weak_rsp_order, AnalysisError, L1Error, LinearSystem, Matrix,
    RspError, SparsestOutcome, UniquenessVerdict, Vector,
};
use report::{
    problem_echo, rational_string, render_json, vector_strings, AnalyzeVerdict, CertifyVerdict,
    ClassifyVerdict, CoherenceJson, OracleJson, OrderRspJson, Report, SolveVerdict,
    SparsestEntry, SparsestVerdict, Verdicts,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "l1cert",
    version,
    about = "Exact certificates for sparsest and least l1-norm solutions of A x = b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the full JSON report to stdout instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Write the full JSON report to a file.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Record wall-clock timing in the report. Off by default so that
    /// reports are byte-stable across runs.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve min |x|_1 s.t. A x = b and certify whether the optimum is unique.
    Solve { file: PathBuf },
    /// Certify whether the supplied x is the unique least l1-norm solution.
    Certify {
        file: PathBuf,
        /// Read x from a separate JSON array file (overrides "x" in the problem file).
        #[arg(long = "x", value_name = "PATH")]
        x_file: Option<PathBuf>,
    },
    /// Classify the system (Group1/2/3) and decide l0/l1 equivalence.
    Classify { file: PathBuf },
    /// Matrix-level analysis: coherence, spark, order-K sweeps.
    Analyze {
        file: PathBuf,
        /// Order K for the range-space sweeps.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Sweep every pattern size 1..=K instead of size K only.
        #[arg(long)]
        strict: bool,
        /// Cross-check the sweep against the brute-force recovery oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate all sparsest solutions with per-solution witness flags.
    Sparsest {
        file: PathBuf,
        /// Largest support size to enumerate (default: min(rows, cols)).
        #[arg(long)]
        k: Option<usize>,
    },
}

enum CliError {
    Io(String),
    Parse(String),
    Inconsistent,
    NotASolution,
    BadOrder(String),
    KmaxExceeded(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Inconsistent => 3,
            CliError::NotASolution => 4,
            CliError::BadOrder(_) => 5,
            CliError::KmaxExceeded(_) => 6,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) | CliError::Parse(m) => m.clone(),
            CliError::Inconsistent => "the system A x = b has no solution".to_owned(),
            CliError::NotASolution => "the supplied x does not solve A x = b".to_owned(),
            CliError::BadOrder(m) => m.clone(),
            CliError::KmaxExceeded(k) => {
                format!("no solution with at most {k} nonzeros; raise --k")
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let (report, summary) = match &cli.command {
        Command::Solve { file } => cmd_solve(file)?,
        Command::Certify { file, x_file } => cmd_certify(file, x_file.as_deref())?,
        Command::Classify { file } => cmd_classify(file)?,
        Command::Analyze {
            file,
            k,
            strict,
            oracle,
        } => cmd_analyze(file, *k, *strict, *oracle)?,
        Command::Sparsest { file, k } => cmd_sparsest(file, *k)?,
    };
    let report = Report {
        timing_ms: cli.timings.then(|| started.elapsed().as_millis()),
        ..report
    };
    let json = render_json(&report);
    if let Some(path) = &cli.output {
        std::fs::write(path, &json)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    if cli.json {
        print!("{json}");
    } else {
        print!("{summary}");
    }
    Ok(())
}

fn load(path: &std::path::Path) -> Result<problem::ProblemFile, CliError> {
    problem::load_problem(path).map_err(CliError::Parse)
}

fn require_system(p: &problem::ProblemFile) -> Result<LinearSystem, CliError> {
    let b = p
        .b
        .clone()
        .ok_or_else(|| CliError::Parse("this command needs \"b\" in the problem file".into()))?;
    Ok(LinearSystem::new(p.a.clone(), b).expect("lengths validated at load time"))
}

fn fmt_vector(v: &[l1cert_core::Rational]) -> String {
    format!("[{}]", vector_strings(v).join(", "))
}

fn certificate_verdict(
    sys: &LinearSystem,
    x: &Vector,
    with_dual: bool,
) -> Result<(UniquenessVerdict, CertifyVerdict), CliError> {
    let verdict = certify_unique_l1(sys, x).map_err(|e| match e {
        RspError::NotASolution => CliError::NotASolution,
        other => CliError::Parse(other.to_string()),
    })?;
    let dual = if with_dual && verdict.rsp.holds {
        let eta = verdict.rsp.eta.as_ref().expect("witness present when it holds");
        Some(dual_certificate_from_eta(x, eta).expect("a holding witness has the right shape"))
    } else {
        None
    };
    let json = CertifyVerdict::from_verdict(&verdict, dual.as_ref());
    Ok((verdict, json))
}

fn describe_certificate(out: &mut String, verdict: &UniquenessVerdict) {
    match (&verdict.rsp.tau_star, verdict.rsp.feasible) {
        (Some(tau), _) => {
            let _ = writeln!(
                out,
                "range-space witness: {} (tau* = {})",
                if verdict.rsp.holds { "holds" } else { "fails" },
                rational_string(tau)
            );
        }
        (None, false) => {
            let _ = writeln!(out, "range-space witness: fails (no multiplier exists)");
        }
        _ => {}
    }
    let _ = writeln!(
        out,
        "support columns independent: {}",
        verdict.support_full_rank
    );
    let _ = writeln!(out, "unique least l1-norm solution: {}", verdict.is_unique);
}

fn cmd_solve(file: &std::path::Path) -> Result<(Report, String), CliError> {
    let p = load(file)?;
    let sys = require_system(&p)?;
    let (x_hat, value) = solve_min_l1(&sys).map_err(|e| match e {
        L1Error::InconsistentSystem => CliError::Inconsistent,
        other => CliError::Parse(other.to_string()),
    })?;
    let (verdict, cert_json) = certificate_verdict(&sys, &x_hat, false)?;
    let mut summary = String::new();
    let _ = writeln!(summary, "min-l1 solution: {}", fmt_vector(&x_hat));
    let _ = writeln!(summary, "l1 value: {}", rational_string(&value));
    describe_certificate(&mut summary, &verdict);
    let report = Report {
        command: "solve".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        problem: problem_echo(&p.a, p.b.as_ref(), p.x.as_ref()),
        verdicts: Verdicts::Solve(SolveVerdict {
            x_hat: vector_strings(&x_hat),
            l1_value: rational_string(&value),
            unique: verdict.is_unique,
            certificate: cert_json,
        }),
        timing_ms: None,
    };
    Ok((report, summary))
}

fn cmd_certify(
    file: &std::path::Path,
    x_file: Option<&std::path::Path>,
) -> Result<(Report, String), CliError> {
    let p = load(file)?;
    let sys = require_system(&p)?;
    let x = match x_file {
        Some(path) => {
            let v = problem::load_vector_file(path).map_err(CliError::Parse)?;
            if v.len() != sys.a.cols() {
                return Err(CliError::Parse(format!(
                    "x has {} entries but A has {} columns",
                    v.len(),
                    sys.a.cols()
                )));
            }
            v
        }
        None => p.x.clone().ok_or_else(|| {
            CliError::Parse("certify needs \"x\" in the problem file or --x <file>".into())
        })?,
    };
    let (verdict, cert_json) = certificate_verdict(&sys, &x, true)?;
    let mut summary = String::new();
    let _ = writeln!(summary, "candidate x: {}", fmt_vector(&x));
    let _ = writeln!(summary, "l1 norm: {}", rational_string(&l1_norm(&x)));
    describe_certificate(&mut summary, &verdict);
    if cert_json.dual_certificate.is_some() {
        let _ = writeln!(summary, "dual certificate: constructed (omega = -1)");
    }
    let report = Report {
        command: "certify".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        problem: problem_echo(&p.a, p.b.as_ref(), Some(&x)),
        verdicts: Verdicts::Certify(cert_json),
        timing_ms: None,
    };
    Ok((report, summary))
}

fn cmd_classify(file: &std::path::Path) -> Result<(Report, String), CliError> {
    let p = load(file)?;
    let sys = require_system(&p)?;
    let c = classify_system(&sys).map_err(|e| match e {
        L1Error::InconsistentSystem => CliError::Inconsistent,
        other => CliError::Parse(other.to_string()),
    })?;
    let json = ClassifyVerdict::from_classification(&c);
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "group: {} ({})",
        json.group,
        match c.group {
            l1cert_core::SystemGroup::Group1 => "unique l1 optimum, unique sparsest",
            l1cert_core::SystemGroup::Group2 => "unique l1 optimum, multiple sparsest",
            l1cert_core::SystemGroup::Group3 => "multiple l1 optima",
        }
    );
    let _ = writeln!(
        summary,
        "l1 solution: {} (value {}, unique: {})",
        fmt_vector(&c.l1_solution),
        rational_string(&c.l1_value),
        c.l1_unique
    );
    let _ = writeln!(
        summary,
        "sparsest: k* = {}, {} solution(s)",
        c.sparsest.k_star,
        c.sparsest.solutions.len()
    );
    let _ = writeln!(
        summary,
        "equivalent: {}   strongly equivalent: {}",
        c.equivalent, c.strongly_equivalent
    );
    let report = Report {
        command: "classify".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        problem: problem_echo(&p.a, p.b.as_ref(), p.x.as_ref()),
        verdicts: Verdicts::Classify(json),
        timing_ms: None,
    };
    Ok((report, summary))
}

fn cmd_analyze(
    file: &std::path::Path,
    k: usize,
    strict: bool,
    oracle: bool,
) -> Result<(Report, String), CliError> {
    let p = load(file)?;
    let a: &Matrix = &p.a;
    let map_order_err = |e: AnalysisError| match e {
        AnalysisError::OrderOutOfRange { .. } => CliError::BadOrder(e.to_string()),
        other => CliError::Parse(other.to_string()),
    };
    let order = rsp_order(a, k, strict).map_err(map_order_err)?;
    let weak = weak_rsp_order(a, k).map_err(map_order_err)?;
    let (coherence, coherence_error) = match mutual_coherence(a) {
        Ok(c) => (Some(c), None),
        Err(e @ AnalysisError::ZeroColumn { .. }) => (None, Some(e.to_string())),
        Err(other) => return Err(CliError::Parse(other.to_string())),
    };
    let spark_value = spark(a);
    let oracle_report = if oracle {
        Some(uniform_recovery_oracle(a, k).map_err(map_order_err)?)
    } else {
        None
    };

    let mut summary = String::new();
    let _ = writeln!(summary, "matrix: {} rows x {} columns", a.rows(), a.cols());
    match (&coherence, &coherence_error) {
        (Some(c), _) => {
            let _ = writeln!(
                summary,
                "mu^2 = {} (columns {} and {}), coherence order bound = {}",
                rational_string(&c.mu_squared),
                c.max_pair.0,
                c.max_pair.1,
                c.order_bound
            );
        }
        (None, Some(err)) => {
            let _ = writeln!(summary, "coherence: undefined ({err})");
        }
        _ => {}
    }
    let _ = writeln!(summary, "spark = {}", spark_value);
    let describe_sweep = |name: &str, rep: &l1cert_core::OrderRspReport| -> String {
        let mut line = format!(
            "{name} (K = {}): {}",
            rep.k,
            if rep.holds { "holds" } else { "fails" }
        );
        if !rep.rank_condition {
            line.push_str(" [no K independent columns]");
        }
        if let Some((s1, s2)) = &rep.failing_pair {
            line.push_str(&format!(" at pattern (+{s1:?}, -{s2:?})"));
        }
        line.push_str(&format!(" after {} pattern(s)", rep.checked_pairs));
        line
    };
    let _ = writeln!(summary, "{}", describe_sweep("range-space order sweep", &order));
    let _ = writeln!(summary, "{}", describe_sweep("weak order sweep", &weak));
    let oracle_json = oracle_report.as_ref().map(|r| {
        let agrees = r.all_recovered == order.holds;
        let _ = writeln!(
            summary,
            "recovery oracle: all {}-sparse recovered = {} ({} probes), agrees with sweep: {}",
            r.k, r.all_recovered, r.probes, agrees
        );
        OracleJson::from_report(r, agrees)
    });

    let report = Report {
        command: "analyze".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        problem: problem_echo(&p.a, p.b.as_ref(), p.x.as_ref()),
        verdicts: Verdicts::Analyze(AnalyzeVerdict {
            k,
            coherence: coherence.as_ref().map(CoherenceJson::from_report),
            coherence_error,
            spark: spark_value,
            rsp_order: OrderRspJson::from_report(&order, strict),
            weak_rsp_order: OrderRspJson::from_report(&weak, false),
            oracle: oracle_json,
        }),
        timing_ms: None,
    };
    Ok((report, summary))
}

fn cmd_sparsest(file: &std::path::Path, k: Option<usize>) -> Result<(Report, String), CliError> {
    let p = load(file)?;
    let sys = require_system(&p)?;
    if !sys.is_consistent() {
        return Err(CliError::Inconsistent);
    }
    let k_max = k.unwrap_or_else(|| default_k_max(&sys)).min(sys.a.cols());
    let set = match sparsest_solutions(&sys, k_max) {
        SparsestOutcome::Found(set) => set,
        SparsestOutcome::ExceededKmax { k_max } => return Err(CliError::KmaxExceeded(k_max)),
    };
    let entries: Vec<SparsestEntry> = set
        .solutions
        .iter()
        .map(|x| {
            let rsp = rsp_at_point(&sys.a, x).expect("solution length matches");
            SparsestEntry {
                x: vector_strings(x),
                rsp_holds: rsp.holds,
                tau_star: rsp.tau_star.as_ref().map(rational_string),
                eta: rsp.eta.as_deref().map(vector_strings),
            }
        })
        .collect();
    let passing = entries.iter().filter(|e| e.rsp_holds).count();
    // at most one sparsest solution can carry a witness
    assert!(passing <= 1);
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "k* = {} with {} sparsest solution(s)",
        set.k_star,
        set.solutions.len()
    );
    for entry in &entries {
        let _ = writeln!(
            summary,
            "  [{}]  witness: {}{}",
            entry.x.join(", "),
            if entry.rsp_holds { "yes" } else { "no" },
            entry
                .tau_star
                .as_ref()
                .map(|t| format!(" (tau* = {t})"))
                .unwrap_or_default()
        );
    }
    let _ = writeln!(summary, "witness-passing count: {passing}");
    let report = Report {
        command: "sparsest".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        problem: problem_echo(&p.a, p.b.as_ref(), p.x.as_ref()),
        verdicts: Verdicts::Sparsest(SparsestVerdict {
            k_star: set.k_star,
            solutions: entries,
            rsp_passing: passing,
        }),
        timing_ms: None,
    };
    Ok((report, summary))
}
