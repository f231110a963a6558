//! Per-check records and their human and JSON renderings.

use std::fmt::Write;

use lbialg::algebroid::axioms::Finding;
use lbialg::graded::GPoly;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A computed value, not a check.
    Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    /// Name of the spec-file entry.
    pub item: String,
    pub check: String,
    /// The identity or definition the check exercises.
    pub anchor: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    /// Number of terms in the residual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Record {
    pub fn value(item: &str, check: &str, anchor: &str, value: impl ToString) -> Record {
        Record {
            item: item.into(),
            check: check.into(),
            anchor: anchor.into(),
            verdict: Verdict::Value,
            value: Some(value.to_string()),
            residual: None,
            residual_terms: None,
            elapsed_ms: None,
        }
    }

    pub fn flag(item: &str, check: &str, anchor: &str, ok: bool) -> Record {
        Record {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            value: None,
            ..Record::value(item, check, anchor, "")
        }
    }

    /// Passes iff the residual is zero.
    pub fn zero(item: &str, check: &str, anchor: &str, residual: &GPoly) -> Record {
        let mut r = Record::flag(item, check, anchor, residual.is_zero());
        if !residual.is_zero() {
            r.residual = Some(residual.to_string());
            r.residual_terms = Some(residual.len());
        }
        r
    }

    /// Passes iff no identity instance fails.
    pub fn findings(item: &str, check: &str, anchor: &str, findings: &[Finding]) -> Record {
        let mut r = Record::flag(item, check, anchor, findings.is_empty());
        if !findings.is_empty() {
            let parts: Vec<String> = findings
                .iter()
                .map(|f| format!("{} at {}: {}", f.identity, f.at, f.residual))
                .collect();
            r.residual = Some(parts.join("; "));
            r.residual_terms = Some(findings.iter().map(|f| f.residual.len()).sum());
        }
        r
    }

    /// A failure carrying an engine message instead of a polynomial.
    pub fn failed(item: &str, check: &str, anchor: &str, message: impl ToString) -> Record {
        Record {
            residual: Some(message.to_string()),
            ..Record::flag(item, check, anchor, false)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub values: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl Report {
    pub fn new(subcommand: impl Into<String>, records: Vec<Record>) -> Report {
        let count = |v| records.iter().filter(|r| r.verdict == v).count();
        let summary = Summary {
            passed: count(Verdict::Pass),
            failed: count(Verdict::Fail),
            values: count(Verdict::Value),
        };
        let exit_code = i32::from(summary.failed > 0);
        Report {
            subcommand: subcommand.into(),
            records,
            summary,
            exit_code,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One line per check; values on a line of their own after their
    /// header. Failed residuals are summarized unless `residuals` is set.
    pub fn to_human(&self, residuals: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.verdict {
                Verdict::Pass => "PASS ",
                Verdict::Fail => "FAIL ",
                Verdict::Value => "VALUE",
            };
            let _ = write!(out, "{tag} {}  {}  [{}]", r.item, r.check, r.anchor);
            if let Some(ms) = r.elapsed_ms {
                let _ = write!(out, "  ({ms} ms)");
            }
            out.push('\n');
            if let Some(v) = &r.value {
                let _ = writeln!(out, "{v}");
            }
            if let Some(res) = &r.residual {
                match (residuals, r.residual_terms) {
                    (false, Some(n)) => {
                        let _ = writeln!(out, "      residual: {n} term{}", if n == 1 { "" } else { "s" });
                    }
                    _ => {
                        let _ = writeln!(out, "      residual: {res}");
                    }
                }
            }
        }
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} values",
            self.subcommand, self.summary.passed, self.summary.failed, self.summary.values
        );
        out
    }
}
