//! Named invariant suites with a stable JSON report.
//!
//! Every check is named `<suite>.<check>` and compares a computed value
//! against an expectation. Tolerances are looked up by `<suite>.<key>`,
//! where several checks may share one key; overrides replace the default
//! and are echoed in the summary.

mod suites;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Axioms,
    Specfun,
    Star,
    Models,
    Fock,
    Su11,
    Projection,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Axioms, Suite::Specfun, Suite::Star, Suite::Models, Suite::Fock, Suite::Su11, Suite::Projection];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Specfun => "specfun",
            Suite::Star => "star",
            Suite::Models => "models",
            Suite::Fock => "fock",
            Suite::Su11 => "su11",
            Suite::Projection => "projection",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite '{s}'")))
    }
}

/// Tolerance overrides keyed by `<suite>.<key>`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub overrides: BTreeMap<String, f64>,
}

impl Tolerances {
    /// Parses `suite.key=value`.
    pub fn parse_assignment(&mut self, s: &str) -> Result<()> {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("tolerance override '{s}' is not key=value")))?;
        let v: f64 = v.trim().parse().map_err(|_| Error::InvalidInput(format!("tolerance '{v}' is not a number")))?;
        self.insert(k.trim(), v)
    }

    pub fn insert(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::InvalidInput(format!("tolerance for {key} must be positive, got {value}")));
        }
        let (suite, rest) =
            key.split_once('.').ok_or_else(|| Error::InvalidInput(format!("tolerance key '{key}' needs suite.key")))?;
        suite.parse::<Suite>()?;
        if rest.is_empty() {
            return Err(Error::InvalidInput(format!("tolerance key '{key}' needs suite.key")));
        }
        self.overrides.insert(key.to_string(), value);
        Ok(())
    }

    pub fn get(&self, suite: &str, key: &str, default: f64) -> f64 {
        self.overrides.get(&format!("{suite}.{key}")).copied().unwrap_or(default)
    }
}

/// One comparison. `value` is `null` in JSON when the computation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub value: Option<f64>,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_seconds: f64,
    pub tolerance_overrides: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Collects checks for one suite.
pub(crate) struct Recorder<'a> {
    suite: &'static str,
    tols: &'a Tolerances,
    checks: Vec<Check>,
}

impl<'a> Recorder<'a> {
    pub(crate) fn new(suite: Suite, tols: &'a Tolerances) -> Self {
        Recorder { suite: suite.name(), tols, checks: Vec::new() }
    }

    fn push(&mut self, name: &str, params: Value, value: Result<f64>, expected: f64, tolerance: f64, bound: bool) {
        let (value, error) = match value {
            Ok(v) if v.is_finite() => (Some(v), None),
            Ok(v) => (None, Some(format!("non-finite value {v}"))),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = match value {
            Some(v) if bound => v <= tolerance,
            Some(v) => (v - expected).abs() <= tolerance,
            None => false,
        };
        self.checks.push(Check {
            name: format!("{}.{name}", self.suite),
            params,
            value,
            expected,
            tolerance,
            pass,
            error,
        });
    }

    /// `value ≤ tol`, with `tol` looked up under `key`.
    pub(crate) fn residual(&mut self, name: &str, key: &str, params: Value, default_tol: f64, value: Result<f64>) {
        let tol = self.tols.get(self.suite, key, default_tol);
        self.push(name, params, value, 0.0, tol, true);
    }

    /// `value ≤ bound` for a bound computed at run time (no override).
    pub(crate) fn bounded(&mut self, name: &str, params: Value, bound: f64, value: Result<f64>) {
        self.push(name, params, value, 0.0, bound, true);
    }

    /// `|value - expected| ≤ tol`.
    pub(crate) fn near(&mut self, name: &str, key: &str, params: Value, expected: f64, default_tol: f64, value: Result<f64>) {
        let tol = self.tols.get(self.suite, key, default_tol);
        self.push(name, params, value, expected, tol, false);
    }

    pub(crate) fn finish(self) -> Vec<Check> {
        self.checks
    }
}

/// Runs `suite` (every suite for [`Suite::All`]).
pub fn run_suite(suite: Suite, tols: &Tolerances) -> Report {
    let start = Instant::now();
    let list: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in list {
        checks.extend(suites::run(s, tols));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    Report {
        suite: suite.name().to_string(),
        summary: Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
            elapsed_seconds: start.elapsed().as_secs_f64(),
            tolerance_overrides: tols.overrides.clone(),
        },
        checks,
    }
}
