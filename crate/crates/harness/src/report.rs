use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::plan::VerificationPlan;

pub const SCHEMA: &str = "dkoszul-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub claim: String,
    pub anchor: String,
    pub params: Value,
    pub status: Status,
    /// Dimensions of the spaces involved.
    pub dims: Vec<usize>,
    /// Computed data, present for every status.
    pub data: Value,
    /// Present exactly when the record fails.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Claim ids with at least one failing record, sorted.
    pub failing_claims: Vec<String>,
}

/// Wall-clock data, kept apart so the rest of the report is reproducible.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_seconds: f64,
    /// Seconds per record, in record order.
    pub records: Vec<f64>,
    pub cache_corrupted: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub calibration: String,
    pub plan: VerificationPlan,
    pub plan_digest: String,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub timings: Timings,
}

impl Report {
    pub fn new(plan: VerificationPlan, records: Vec<Record>, timings: Timings) -> Self {
        let mut summary = Summary { total: records.len(), ..Default::default() };
        for r in &records {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => {
                    summary.failed += 1;
                    summary.failing_claims.push(r.claim.clone());
                }
                Status::Skipped => summary.skipped += 1,
            }
        }
        summary.failing_claims.sort();
        summary.failing_claims.dedup();
        Report {
            schema: SCHEMA.into(),
            calibration: dkoszul_core::koszul::CALIBRATION.into(),
            plan_digest: plan.digest(),
            plan,
            records,
            summary,
            timings,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// Process exit code: 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.all_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without its timing field; identical across runs of one plan.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timings");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// One line per record plus a summary, for terminals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag} {:<16} {}", r.claim, r.params));
            if let Some(reason) = &r.reason {
                out.push_str(&format!("  ({reason})"));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!("{} records: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped));
        if !s.failing_claims.is_empty() {
            out.push_str(&format!("; failing claims: {}", s.failing_claims.join(", ")));
        }
        out.push('\n');
        out
    }
}
