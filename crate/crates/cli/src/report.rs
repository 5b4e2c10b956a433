//! Machine-readable run reports and the JSON payload helpers they use.

use std::time::Instant;

use anyhow::Result;
use octa_core::diagram::{DiagramIso, PeriodicDiagram, PretriangleReport};
use octa_core::stable::{DistinguishedReport, StableMorphism, Triangle};
use octa_core::OctaError;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub payload: Value,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), status: Status::Pass, checks: Vec::new(), elapsed_ms: 0.0 }
    }

    /// Runs one check and records it. Hitting the enumeration cap makes the
    /// check inconclusive; any other error aborts the run.
    pub fn run(&mut self, name: &str, check: impl FnOnce() -> Result<(Status, Value)>) -> Result<Status> {
        let start = Instant::now();
        let (status, payload) = match check() {
            Ok(r) => r,
            Err(e) => match e.downcast_ref::<OctaError>() {
                Some(OctaError::EnumerationTooLarge { .. }) => {
                    (Status::Inconclusive, json!({ "error": e.to_string() }))
                }
                _ => return Err(e),
            },
        };
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        self.elapsed_ms += elapsed_ms;
        self.checks.push(CheckResult { name: name.to_string(), status, payload, elapsed_ms });
        self.status = overall(self.checks.iter().map(|c| c.status));
        Ok(status)
    }

    /// One line per check, for the terminal.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<12} {} ({:.1} ms)\n", c.status.label(), c.name, c.elapsed_ms));
        }
        out.push_str(&format!("{}: {}\n", self.command, self.status.label()));
        out
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

/// A definite failure outranks an unfinished check.
fn overall(statuses: impl Iterator<Item = Status>) -> Status {
    statuses.fold(Status::Pass, |acc, s| match (acc, s) {
        (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
        (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
        _ => Status::Pass,
    })
}

pub fn morphism_json(f: &StableMorphism) -> Value {
    json!({
        "source": f.source().exponents(),
        "target": f.target().exponents(),
        "matrix": f.matrix().to_rows(),
    })
}

pub fn triangle_json(t: &Triangle) -> Value {
    json!({ "f": morphism_json(&t.f), "g": morphism_json(&t.g), "h": morphism_json(&t.h) })
}

pub fn distinguished_json(r: &DistinguishedReport) -> Value {
    json!({
        "distinguished": r.distinguished,
        "failure": r.failure,
        "fill_in": r.fill_in.as_ref().map(morphism_json),
    })
}

pub fn pretriangle_json(r: &PretriangleReport, period: i64) -> Value {
    json!({
        "cells_checked": r.cells_checked,
        "failure": r.failure.as_ref().map(|(cell, why)| json!({ "cell": cell.label(period), "reason": why })),
    })
}

/// Components of a diagram isomorphism keyed by position label.
pub fn iso_json(iso: &DiagramIso, d: &PeriodicDiagram) -> Value {
    let period = d.period();
    let map: serde_json::Map<String, Value> =
        iso.components().iter().map(|(p, f)| (p.label(period), json!(f.matrix().to_rows()))).collect();
    Value::Object(map)
}
