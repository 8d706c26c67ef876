use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Outcome of one command on one input.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub input: Option<(String, String)>,
    pub counts: Option<Vec<usize>>,
    pub checks: Vec<Check>,
    /// Command-specific results, printed in key order.
    pub data: Map<String, Value>,
    /// Text lines printed after the checks in text mode.
    pub lines: Vec<String>,
    pub timings: Vec<(String, u128)>,
    started: Instant,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            input: None,
            counts: None,
            checks: Vec::new(),
            data: Map::new(),
            lines: Vec::new(),
            timings: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn set_input(&mut self, path: &str, bytes: &[u8]) {
        self.input = Some((path.to_string(), sha256_hex(bytes)));
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        let status = if pass { Status::Pass } else { Status::Fail };
        self.checks.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn skip(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
        });
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.into(), value.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records the time elapsed since the report was created.
    pub fn mark(&mut self, stage: &str) {
        self.timings
            .push((stage.into(), self.started.elapsed().as_millis()));
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        if let Some((path, digest)) = &self.input {
            m.insert("input".into(), json!({ "path": path, "sha256": digest }));
        }
        if let Some(c) = &self.counts {
            m.insert("cells".into(), json!(c));
        }
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status.as_str(), "detail": c.detail }))
            .collect();
        m.insert("checks".into(), Value::Array(checks));
        m.insert("pass".into(), json!(!self.failed()));
        if !self.data.is_empty() {
            m.insert("data".into(), Value::Object(self.data.clone()));
        }
        if timings {
            let t: Map<String, Value> = self
                .timings
                .iter()
                .map(|(k, v)| (k.clone(), json!(v)))
                .collect();
            m.insert("timings_ms".into(), Value::Object(t));
        }
        Value::Object(m)
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some((path, digest)) = &self.input {
            out += &format!("input: {path} (sha256 {digest})\n");
        }
        if let Some(c) = &self.counts {
            let parts: Vec<String> = c.iter().map(|n| n.to_string()).collect();
            out += &format!("cells by dimension: [{}]\n", parts.join(", "));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            if c.detail.is_empty() {
                out += &format!("{tag} {}\n", c.name);
            } else {
                out += &format!("{tag} {}: {}\n", c.name, c.detail);
            }
        }
        for l in &self.lines {
            out += l;
            out.push('\n');
        }
        if timings {
            for (k, v) in &self.timings {
                out += &format!("time {k}: {v} ms\n");
            }
        }
        out
    }
}
