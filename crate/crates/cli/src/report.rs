//! Machine-readable reports.
//!
//! Every rational is serialized in its canonical string form, all
//! index sets are 0-based, and field order is fixed by the struct
//! definitions, so a report is byte-stable across runs on the same
//! input. Timing is opt-in (`--timings`) to keep that stability.

use l1cert_core::{
    format_rational, CoherenceReport, DualCertificate, Matrix, OrderRspReport, Rational,
    RecoveryReport, RspPointReport, SystemClassification, SystemGroup, UniquenessVerdict, Vector,
};
use serde::Serialize;

pub fn rational_string(r: &Rational) -> String {
    format_rational(r)
}

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| vector_strings(m.row(r))).collect()
}

#[derive(Serialize)]
pub struct ProblemEcho {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    pub problem: ProblemEcho,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Verdicts {
    Solve(SolveVerdict),
    Certify(CertifyVerdict),
    Classify(ClassifyVerdict),
    Analyze(AnalyzeVerdict),
    Sparsest(SparsestVerdict),
}

#[derive(Serialize)]
pub struct RspJson {
    pub feasible: bool,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_star: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<Vec<String>>,
}

impl RspJson {
    pub fn from_report(r: &RspPointReport) -> Self {
        RspJson {
            feasible: r.feasible,
            holds: r.holds,
            tau_star: r.tau_star.as_ref().map(rational_string),
            eta: r.eta.as_deref().map(vector_strings),
            multiplier: r.multiplier.as_deref().map(vector_strings),
        }
    }
}

#[derive(Serialize)]
pub struct DualCertificateJson {
    pub y: Vec<String>,
    pub y_prime: Vec<String>,
    pub omega: String,
}

impl DualCertificateJson {
    pub fn from_certificate(c: &DualCertificate) -> Self {
        DualCertificateJson {
            y: vector_strings(&c.y),
            y_prime: vector_strings(&c.y_prime),
            omega: rational_string(&c.omega),
        }
    }
}

#[derive(Serialize)]
pub struct CertifyVerdict {
    pub rsp: RspJson,
    pub support_full_rank: bool,
    pub is_unique: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_certificate: Option<DualCertificateJson>,
}

impl CertifyVerdict {
    pub fn from_verdict(v: &UniquenessVerdict, dual: Option<&DualCertificate>) -> Self {
        let reason = if v.is_unique {
            None
        } else if !v.rsp.holds {
            Some("rsp-failed")
        } else {
            Some("support-rank-deficient")
        };
        CertifyVerdict {
            rsp: RspJson::from_report(&v.rsp),
            support_full_rank: v.support_full_rank,
            is_unique: v.is_unique,
            reason,
            dual_certificate: dual.map(DualCertificateJson::from_certificate),
        }
    }
}

#[derive(Serialize)]
pub struct SolveVerdict {
    pub x_hat: Vec<String>,
    pub l1_value: String,
    pub unique: bool,
    pub certificate: CertifyVerdict,
}

#[derive(Serialize)]
pub struct ClassifyVerdict {
    pub group: String,
    pub l1_solution: Vec<String>,
    pub l1_value: String,
    pub l1_unique: bool,
    pub k_star: usize,
    pub sparsest: Vec<Vec<String>>,
    pub equivalent: bool,
    pub strongly_equivalent: bool,
}

impl ClassifyVerdict {
    pub fn from_classification(c: &SystemClassification) -> Self {
        ClassifyVerdict {
            group: match c.group {
                SystemGroup::Group1 => "Group1".to_owned(),
                SystemGroup::Group2 => "Group2".to_owned(),
                SystemGroup::Group3 => "Group3".to_owned(),
            },
            l1_solution: vector_strings(&c.l1_solution),
            l1_value: rational_string(&c.l1_value),
            l1_unique: c.l1_unique,
            k_star: c.sparsest.k_star,
            sparsest: c.sparsest.solutions.iter().map(|v| vector_strings(v)).collect(),
            equivalent: c.equivalent,
            strongly_equivalent: c.strongly_equivalent,
        }
    }
}

#[derive(Serialize)]
pub struct CoherenceJson {
    pub mu_squared: String,
    /// 0-based column pair attaining the maximum.
    pub max_pair: [usize; 2],
    pub order_bound: usize,
}

impl CoherenceJson {
    pub fn from_report(c: &CoherenceReport) -> Self {
        CoherenceJson {
            mu_squared: rational_string(&c.mu_squared),
            max_pair: [c.max_pair.0, c.max_pair.1],
            order_bound: c.order_bound,
        }
    }
}

#[derive(Serialize)]
pub struct OrderRspJson {
    pub k: usize,
    pub strict: bool,
    pub holds: bool,
    pub rank_condition: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_pair: Option<(Vec<usize>, Vec<usize>)>,
    pub checked_pairs: usize,
}

impl OrderRspJson {
    pub fn from_report(r: &OrderRspReport, strict: bool) -> Self {
        OrderRspJson {
            k: r.k,
            strict,
            holds: r.holds,
            rank_condition: r.rank_condition,
            failing_pair: r.failing_pair.clone(),
            checked_pairs: r.checked_pairs,
        }
    }
}

#[derive(Serialize)]
pub struct OracleJson {
    pub k: usize,
    pub all_recovered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
    pub probes: usize,
    pub agrees_with_rsp_order: bool,
}

impl OracleJson {
    pub fn from_report(r: &RecoveryReport, agrees: bool) -> Self {
        OracleJson {
            k: r.k,
            all_recovered: r.all_recovered,
            counterexample: r.counterexample.as_deref().map(vector_strings),
            probes: r.probes,
            agrees_with_rsp_order: agrees,
        }
    }
}

#[derive(Serialize)]
pub struct AnalyzeVerdict {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coherence: Option<CoherenceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coherence_error: Option<String>,
    pub spark: usize,
    pub rsp_order: OrderRspJson,
    pub weak_rsp_order: OrderRspJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

#[derive(Serialize)]
pub struct SparsestEntry {
    pub x: Vec<String>,
    pub rsp_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_star: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct SparsestVerdict {
    pub k_star: usize,
    pub solutions: Vec<SparsestEntry>,
    /// Count of solutions whose witness test holds; at most one.
    pub rsp_passing: usize,
}

pub fn problem_echo(a: &Matrix, b: Option<&Vector>, x: Option<&Vector>) -> ProblemEcho {
    ProblemEcho {
        a: matrix_strings(a),
        b: b.map(|v| vector_strings(v)),
        x: x.map(|v| vector_strings(v)),
    }
}

pub fn render_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    text
}
