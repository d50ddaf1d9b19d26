//! Uniform pass/fail reports for command output.

use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub command: String,
    pub status: Status,
    pub items: Vec<Item>,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            format: crate::FORMAT,
            command: command.into(),
            status: Status::Pass,
            items: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        ok: bool,
    ) {
        self.items.push(Item {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            verdict: Verdict::from_bool(ok),
        });
        self.status = self.compute_status();
    }

    /// Records an item whose expected and actual values are both `true`/`false`.
    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.push(name, true, ok, ok);
    }

    fn compute_status(&self) -> Status {
        let passed = self
            .items
            .iter()
            .filter(|i| i.verdict == Verdict::Pass)
            .count();
        if passed == self.items.len() {
            Status::Pass
        } else if passed == 0 {
            Status::Fail
        } else {
            Status::Partial
        }
    }

    pub fn with_timing(mut self, elapsed: Duration) -> Self {
        self.timing_ms = elapsed.as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let tag = if item.verdict == Verdict::Pass {
                "PASS"
            } else {
                "FAIL"
            };
            if item.expected == item.actual {
                writeln!(f, "{tag}  {}: {}", item.name, item.actual)?;
            } else {
                writeln!(
                    f,
                    "{tag}  {}: expected {}, got {}",
                    item.name, item.expected, item.actual
                )?;
            }
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
        };
        write!(
            f,
            "{}: {status} ({} items, {} ms)",
            self.command,
            self.items.len(),
            self.timing_ms
        )
    }
}
