//! Machine-readable reports: JSON (`"schema": 1`) and TSV with a header row.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` marks an informational line that does not affect the verdict.
    pub pass: Option<bool>,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

impl Report {
    pub fn new(command: &str, params: &crate::config::Params) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            params: params.map().clone(),
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Serialize) {
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            pass: Some(pass),
            detail: to_value(detail),
        });
    }

    pub fn info(&mut self, name: impl Into<String>, detail: impl Serialize) {
        self.checks.push(Check {
            name: name.into(),
            pass: None,
            detail: to_value(detail),
        });
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.pass == Some(false)).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("command\tcheck\tstatus\tdetail\n");
        for c in &self.checks {
            let status = match c.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            let detail = serde_json::to_string(&c.detail)
                .expect("values serialize")
                .replace('\t', " ");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                self.command, c.name, status, detail
            ));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
        }
    }
}

pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Big integers as decimal strings.
pub fn big_strings(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
