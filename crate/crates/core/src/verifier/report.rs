use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// How a verdict feeds the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// A failure exits 1.
    Assertion,
    /// A failure exits 3: an input the theory assumes away.
    Assumption,
    /// Never affects the exit code.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub kind: Kind,
    pub evidence: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    pub seed: u64,
    pub instance: Value,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ASSUMPTION: i32 = 3;

impl Report {
    pub fn new(command: &str, seed: u64, instance: Value) -> Report {
        Report {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            instance,
            verdicts: Vec::new(),
            notes: Vec::new(),
            exit_code: EXIT_PASS,
            timing_ms: None,
        }
    }

    pub fn push(&mut self, check: impl Into<String>, passed: bool, kind: Kind, evidence: Value) {
        self.verdicts.push(Verdict {
            check: check.into(),
            passed,
            kind,
            evidence,
        });
        self.exit_code = self.compute_exit();
    }

    pub fn assert(&mut self, check: impl Into<String>, passed: bool, evidence: Value) {
        self.push(check, passed, Kind::Assertion, evidence);
    }

    pub fn info(&mut self, check: impl Into<String>, evidence: Value) {
        self.push(check, true, Kind::Info, evidence);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn compute_exit(&self) -> i32 {
        let failed = |k: Kind| self.verdicts.iter().any(|v| !v.passed && v.kind == k);
        if failed(Kind::Assumption) {
            EXIT_ASSUMPTION
        } else if failed(Kind::Assertion) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }

    pub fn passed(&self) -> bool {
        self.exit_code == EXIT_PASS
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.passed && v.kind != Kind::Info)
    }

    pub fn to_json(&self) -> String {
        super::io::to_json_string(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} (hopfcert {}, seed {})", self.command, self.tool_version, self.seed);
        let _ = writeln!(s, "instance: {}", self.instance);
        for v in &self.verdicts {
            let tag = match (v.kind, v.passed) {
                (Kind::Info, _) => "INFO",
                (_, true) => "PASS",
                (Kind::Assumption, false) => "ASSUMPTION FAILED",
                (Kind::Assertion, false) => "FAIL",
            };
            let _ = writeln!(s, "{tag:<5} {}", v.check);
            if !v.passed || v.kind == Kind::Info {
                let _ = writeln!(s, "      {}", v.evidence);
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "time: {t} ms");
        }
        let _ = writeln!(s, "exit {}", self.exit_code);
        s
    }
}
