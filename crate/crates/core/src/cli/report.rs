use serde_json::{json, Value};
use thiserror::Error;

use super::args::{Cli, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

/// Output of one command in every format it supports.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub json: Value,
    pub csv: Option<String>,
    pub lines: Vec<String>,
    pub default_format: Format,
}

impl Report {
    pub fn new(command: &'static str, status: Status, json: Value, lines: Vec<String>) -> Self {
        Report { command, status, json, csv: None, lines, default_format: Format::Json }
    }

    pub fn with_csv(mut self, csv: String, default: bool) -> Self {
        self.csv = Some(csv);
        if default {
            self.default_format = Format::Csv;
        }
        self
    }

    pub fn render(&self, format: Option<Format>, cli: &Cli) -> Result<String, CliError> {
        match format.unwrap_or(self.default_format) {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "status": if self.status == Status::Pass { "PASS" } else { "FAIL" },
                    "config": cli,
                    "result": self.json,
                });
                Ok(serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n")
            }
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage(format!("{} has no csv output", self.command))),
            Format::Text => {
                let mut out = format!("{} {}\n", if self.status == Status::Pass { "PASS" } else { "FAIL" }, self.command);
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                Ok(out)
            }
        }
    }
}
