//! Verification reports as JSON and markdown. Integers are written as
//! decimal strings so no consumer truncates them.

use rigidity_core::pipeline::{Analysis, OrderLedger, RigidityResult, Verdict};
use rigidity_core::rep::IrrSum;
use rigidity_core::weight::report_order;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ComponentJson {
    pub weight: String,
    pub multiplicity: String,
    pub dimension: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EliminationJson {
    pub weight: String,
    pub reason: String,
    pub evidence: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderJson {
    pub k: String,
    pub decomposition: Vec<ComponentJson>,
    pub after_normalization: Vec<ComponentJson>,
    pub filter: Vec<ComponentJson>,
    pub after_filter: Vec<ComponentJson>,
    pub eliminations: Vec<EliminationJson>,
    pub survivors: Vec<ComponentJson>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub part: String,
    pub q: String,
    pub l: Vec<String>,
    pub hypotheses: Vec<String>,
    pub genericity: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub model: String,
    pub verdict: String,
    pub seed: String,
    pub orders: Vec<OrderJson>,
    pub bertini_certificates: Vec<CertificateJson>,
    pub vanishings: Vec<String>,
    pub dimension_checks: Vec<CheckJson>,
    pub notes: Vec<String>,
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Rigid => "RIGID",
        Verdict::Incomplete => "INCOMPLETE",
    }
}

fn components(an: &Analysis, s: &IrrSum) -> Vec<ComponentJson> {
    let mut v: Vec<_> = s.iter().collect();
    v.sort_by(|a, b| report_order(&an.engine.rd, a.0, b.0));
    v.into_iter()
        .map(|(w, m)| ComponentJson {
            weight: an.fmt(w),
            multiplicity: m.to_string(),
            dimension: an.engine.weyl_dimension(w).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string()),
        })
        .collect()
}

fn order_json(an: &Analysis, o: &OrderLedger) -> OrderJson {
    OrderJson {
        k: o.k.to_string(),
        decomposition: components(an, &o.decomposition),
        after_normalization: components(an, &o.after_normalization),
        filter: components(an, &o.filter),
        after_filter: components(an, &o.after_filter),
        eliminations: o
            .eliminations
            .iter()
            .map(|e| EliminationJson {
                weight: an.fmt(&e.weight),
                reason: e.reason.as_str().to_string(),
                evidence: e.evidence.clone(),
            })
            .collect(),
        survivors: components(an, &o.survivors),
        notes: o.notes.clone(),
    }
}

pub fn build(an: &Analysis, r: &RigidityResult) -> ReportJson {
    let vs = &r.vanishings;
    let label = |i: usize| vs.tangent_labels[i].clone();
    ReportJson {
        model: r.model.clone(),
        verdict: verdict_str(r.verdict).to_string(),
        seed: r.seed.to_string(),
        orders: r.orders.iter().map(|o| order_json(an, o)).collect(),
        bertini_certificates: vs
            .certificates
            .iter()
            .map(|c| CertificateJson {
                part: c.part.to_string(),
                q: vs.normal_labels[c.q].clone(),
                l: c.l.iter().map(|&i| label(i)).collect(),
                hypotheses: c.hypotheses.clone(),
                genericity: c.genericity.as_ref().map(|g| {
                    format!(
                        "rank {} of max {} over {} samples (seed {})",
                        g.rank, g.max_rank, g.samples, g.seed
                    )
                }),
            })
            .collect(),
        vanishings: vs.strings(),
        dimension_checks: r
            .dimension_checks
            .iter()
            .map(|c| CheckJson {
                label: c.label.clone(),
                expected: c.expected.to_string(),
                actual: c.actual.to_string(),
                ok: c.ok(),
            })
            .collect(),
        notes: r.notes.clone(),
    }
}

pub fn to_json(reports: &[ReportJson]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_markdown(reports: &[ReportJson]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("# {}: {}\n\nseed {}\n\n", r.model, r.verdict, r.seed));
        for o in &r.orders {
            out.push_str(&format!("## Order {}\n\n", o.k));
            out.push_str("| component | dim | reason | evidence |\n|---|---|---|---|\n");
            for e in &o.eliminations {
                let dim = o
                    .decomposition
                    .iter()
                    .find(|c| c.weight == e.weight)
                    .map(|c| c.dimension.as_str())
                    .unwrap_or("?");
                out.push_str(&format!("| {} | {} | {} | {} |\n", e.weight, dim, e.reason, e.evidence.replace('|', "\\|")));
            }
            for s in &o.survivors {
                out.push_str(&format!("| {} | {} | SURVIVES | |\n", s.weight, s.dimension));
            }
            if !o.notes.is_empty() {
                out.push('\n');
                for n in &o.notes {
                    out.push_str(&format!("- {}\n", n));
                }
            }
            out.push('\n');
        }
        out.push_str("## Dimension checks\n\n");
        for c in &r.dimension_checks {
            out.push_str(&format!(
                "- {}: expected {}, got {} {}\n",
                c.label,
                c.expected,
                c.actual,
                if c.ok { "ok" } else { "FAIL" }
            ));
        }
        out.push_str(&format!("\n## Bertini vanishings ({})\n\n", r.vanishings.len()));
        for v in &r.vanishings {
            out.push_str(&format!("- {}\n", v));
        }
        if !r.notes.is_empty() {
            out.push_str("\n## Notes\n\n");
            for n in &r.notes {
                out.push_str(&format!("- {}\n", n));
            }
        }
        out.push('\n');
    }
    out
}
