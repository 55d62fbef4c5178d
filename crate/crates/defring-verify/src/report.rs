//! The verification report: one record per check and parameter tuple,
//! deterministic modulo the timing section.
//!
//! Rationals serialize as `"num/den"` strings, cyclotomic values as plain
//! rationals when possible and as coordinate quadruples `(c0,c1,c2,c3)`
//! otherwise; object keys are sorted, so serialization is byte-stable
//! across runs with identical flags.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Serialize, Clone)]
pub struct CheckRecord {
    /// Stable identifier, `suite/check`.
    pub id: String,
    /// The mathematical claim this record verifies.
    pub statement: String,
    /// Exact parameters of this instance.
    pub params: BTreeMap<String, String>,
    /// `"pass"` or `"fail"`.
    pub status: String,
    /// Computed values backing the verdict.
    pub witness: serde_json::Value,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    /// Deterministic sort key.
    pub fn sort_key(&self) -> (String, String) {
        (
            self.id.clone(),
            serde_json::to_string(&self.params).expect("param map serializes"),
        )
    }
}

/// A check record together with its wall time.
pub struct TimedRecord {
    pub record: CheckRecord,
    pub millis: u128,
}

#[derive(Serialize)]
pub struct ArtifactInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct Invocation {
    pub subcommand: String,
    pub cap: u32,
    pub lambda: Option<i64>,
    pub mu: Option<i64>,
    pub kappa: Option<i64>,
    pub family: Option<String>,
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Serialize)]
pub struct Timing {
    pub total_ms: u128,
    /// Keyed by `id?params`; excluded from determinism comparisons.
    pub per_check_ms: BTreeMap<String, u128>,
}

#[derive(Serialize)]
pub struct Report {
    pub artifact: ArtifactInfo,
    pub invocation: Invocation,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub timing: Timing,
}

impl Report {
    pub fn assemble(invocation: Invocation, timed: Vec<TimedRecord>, total_ms: u128) -> Report {
        let mut timed = timed;
        timed.sort_by_key(|t| t.record.sort_key());
        // one record per (id, parameter tuple)
        for w in timed.windows(2) {
            assert_ne!(
                w[0].record.sort_key(),
                w[1].record.sort_key(),
                "duplicate check record"
            );
        }
        let mut per_check_ms = BTreeMap::new();
        for t in &timed {
            let (id, params) = t.record.sort_key();
            per_check_ms.insert(format!("{id}?{params}"), t.millis);
        }
        let checks: Vec<CheckRecord> = timed.into_iter().map(|t| t.record).collect();
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        Report {
            artifact: ArtifactInfo {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            invocation,
            summary: Summary {
                total: checks.len(),
                passed,
                failed,
            },
            checks,
            timing: Timing {
                total_ms,
                per_check_ms,
            },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Status string from a boolean verdict.
pub fn status(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}
