use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Check passed or a witness was found.
    Pass,
    /// A verified negative answer.
    Negative,
    /// The bounded search ran out before deciding.
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Negative => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Negative
        }
    }

    fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Negative => "negative",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

pub struct Report {
    pub verdict: Verdict,
    pub lines: Vec<String>,
    pub data: Value,
    /// Text output without the closing verdict line.
    pub bare: bool,
}

impl Report {
    pub fn new(verdict: Verdict, data: Value) -> Report {
        Report { verdict, lines: Vec::new(), data, bare: false }
    }

    pub fn line(mut self, s: impl Into<String>) -> Report {
        self.lines.push(s.into());
        self
    }

    pub fn push(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            writeln!(out, "{l}").unwrap();
        }
        if !self.bare {
            writeln!(out, "verdict: {}", self.verdict.name()).unwrap();
        }
        out
    }

    pub fn render_json(&self, command: &str, seed: u64) -> String {
        let v = json!({
            "command": command,
            "verdict": self.verdict.name(),
            "seed": seed,
            "report": self.data,
        });
        serde_json::to_string_pretty(&v).unwrap() + "\n"
    }
}

/// `name: ok` or `name: FAILED`.
pub fn check_line(name: &str, ok: bool) -> String {
    format!("{name}: {}", if ok { "ok" } else { "FAILED" })
}
