//! Verification report records.
//!
//! Every identity check produces one record: the reference label of the
//! statement, canonical text for both sides, a status, and the residual
//! (the canonicalized difference, or both candidate values for
//! convention-dependent statements).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    FlaggedConvention,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// Statement label, e.g. "2.26" or "thm-2.10".
    pub reference: String,
    pub suite: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    #[serde(default)]
    pub notes: Vec<String>,
    /// Milliseconds; populated only when timing collection is enabled so
    /// that default output stays byte-for-byte deterministic.
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub flagged: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub suite: String,
    pub dim: u8,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, dim: u8, records: Vec<CheckRecord>) -> Self {
        let summary = Summary {
            total: records.len(),
            matched: records.iter().filter(|r| r.status == Status::Match).count(),
            mismatched: records
                .iter()
                .filter(|r| r.status == Status::Mismatch)
                .count(),
            flagged: records
                .iter()
                .filter(|r| r.status == Status::FlaggedConvention)
                .count(),
        };
        VerificationReport {
            version: 1,
            suite: suite.to_string(),
            dim,
            records,
            summary,
        }
    }

    pub fn has_mismatch(&self) -> bool {
        self.summary.mismatched > 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (n = {}): {} checks, {} match, {} mismatch, {} flagged\n",
            self.suite,
            self.dim,
            self.summary.total,
            self.summary.matched,
            self.summary.mismatched,
            self.summary.flagged
        ));
        for r in &self.records {
            let tag = match r.status {
                Status::Match => "match  ",
                Status::Mismatch => "MISMATCH",
                Status::FlaggedConvention => "flagged",
            };
            out.push_str(&format!("[{}] {:<28} ({})\n", tag, r.check_id, r.reference));
            if r.status != Status::Match {
                out.push_str(&format!(
                    "    lhs: {}\n    rhs: {}\n    residual: {}\n",
                    r.lhs, r.rhs, r.residual
                ));
            }
            for n in &r.notes {
                out.push_str(&format!("    note: {}\n", n));
            }
        }
        out
    }
}
