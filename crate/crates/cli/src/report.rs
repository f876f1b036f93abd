use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL: &str = "dbl";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// What a check body hands back before it is named and timed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub details: Value,
}

impl Outcome {
    pub fn new(ok: bool, summary: impl Into<String>, details: Value) -> Self {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            summary: summary.into(),
            details,
        }
    }

    pub fn skip(reason: impl Into<String>) -> Self {
        let reason = reason.into();
        Outcome {
            status: Status::Skip,
            details: serde_json::json!({ "reason": reason }),
            summary: reason,
        }
    }
}

/// Run a check body. Errors and panics become failed checks rather than
/// aborting the whole run.
pub fn run_check<E: std::fmt::Display>(
    name: impl Into<String>,
    timing: bool,
    body: impl FnOnce() -> Result<Outcome, E>,
) -> Check {
    let start = Instant::now();
    let outcome = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => Outcome {
            status: Status::Fail,
            summary: format!("error: {e}"),
            details: serde_json::json!({ "error": e.to_string() }),
        },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Outcome {
                status: Status::Fail,
                summary: format!("internal error: {msg}"),
                details: serde_json::json!({ "error": msg }),
            }
        }
    };
    Check {
        name: name.into(),
        status: outcome.status,
        summary: outcome.summary,
        details: outcome.details,
        timing_ms: timing.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Result of one CLI invocation. Contains no timestamps, so two runs on the
/// same input serialise identically unless timing was requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64, checks: Vec<Check>) -> Self {
        let failed = checks.iter().any(|c| c.status == Status::Fail);
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command,
            seed,
            checks,
            status: if failed { Status::Fail } else { Status::Pass },
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// One line per check plus a closing summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "{:<4} {}: {}", c.status.as_str().to_uppercase(), c.name, c.summary);
            if let Some(ms) = c.timing_ms {
                let _ = write!(out, " ({ms} ms)");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} skipped",
            self.status.as_str(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        );
        out
    }
}
