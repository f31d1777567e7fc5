//! Reproduction cases loaded from data files, run against the workspace
//! crates and compared under per-case tolerances.

mod compare;
pub mod format;
mod ops;
mod properties;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use compare::compare;
pub use format::{certified_complex, certified_digits, certified_real, parse_real, work_err};

const CASES: &str = include_str!("../data/cases.json");
const KNOWN: &str = include_str!("../data/known_discrepancies.json");

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("no case id matches {0:?}")]
    UnknownCase(String),
    #[error("bad filter: {0}")]
    Filter(#[from] regex::Error),
    #[error("data file: {0}")]
    Data(#[from] serde_json::Error),
    #[error("case {id}: {msg}")]
    BadCase { id: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Published value with a citation.
    #[serde(rename = "PAPER")]
    Published,
    #[serde(rename = "TRIVIAL")]
    Trivial,
    #[serde(rename = "DERIVED")]
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    /// Structural equality of the JSON values.
    Exact,
    /// |computed − expected| ≤ value, coefficientwise.
    Abs(f64),
    /// |computed − expected| ≤ value·|expected|.
    Rel(f64),
    /// Expected values are printed decimals; agreement to one unit in the
    /// last printed place plus value.
    Display(f64),
    /// |computed − expected| ≤ value and the nearest integer is expected.
    RoundedInteger(f64),
    /// Computed residual ≤ value; nothing is expected.
    Max(f64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReproCase {
    pub id: String,
    /// Acceptance criterion 1–9, or none for supplementary cases.
    pub criterion: Option<u8>,
    pub op: String,
    pub args: Value,
    pub expected: Value,
    pub tolerance: Tolerance,
    pub provenance: Provenance,
    pub source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnownDiscrepancy {
    pub id: String,
    pub criterion: Option<u8>,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    KnownDiscrepancy,
    Error,
}

/// Result of one operation before comparison.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub computed: Value,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub criterion: Option<u8>,
    pub op: String,
    pub provenance: Provenance,
    pub source: String,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    pub tolerance: Tolerance,
    /// Largest deviation from the expected value, when numeric.
    pub deviation: Option<f64>,
    pub detail: Value,
    pub reason: Option<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionResult {
    pub criterion: u8,
    pub status: Status,
    pub cases: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub known_discrepancy: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub filter: String,
    pub precision_bits: u32,
    pub summary: Summary,
    pub criteria: Vec<CriterionResult>,
    pub cases: Vec<CaseResult>,
    pub seconds: f64,
}

impl Report {
    /// True when nothing failed outside the known-discrepancy list.
    pub fn ok(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    /// Fixed-width table for terminals.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let w = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        out.push_str(&format!("{:<w$}  {:<17}  {:>10}  {:>8}\n", "id", "status", "deviation", "seconds"));
        for c in &self.cases {
            let dev = c.deviation.map(|d| format!("{d:.1e}")).unwrap_or_else(|| "-".into());
            let status = serde_json::to_value(c.status).unwrap();
            out.push_str(&format!("{:<w$}  {:<17}  {:>10}  {:>8.2}\n", c.id, status.as_str().unwrap(), dev, c.seconds));
        }
        for c in &self.criteria {
            let s = if c.status == Status::Pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("criterion {}: {s}\n", c.criterion));
        }
        out
    }
}

pub fn load_cases() -> Result<Vec<ReproCase>, HarnessError> {
    #[derive(Deserialize)]
    struct File {
        cases: Vec<ReproCase>,
    }
    let f: File = serde_json::from_str(CASES)?;
    for c in &f.cases {
        if !ops::OPS.contains(&c.op.as_str()) {
            return Err(HarnessError::BadCase { id: c.id.clone(), msg: format!("unknown op {:?}", c.op) });
        }
        if c.provenance == Provenance::Published && c.source.trim().is_empty() {
            return Err(HarnessError::BadCase { id: c.id.clone(), msg: "published value without a source".into() });
        }
    }
    Ok(f.cases)
}

pub fn load_known() -> Result<Vec<KnownDiscrepancy>, HarnessError> {
    #[derive(Deserialize)]
    struct File {
        known_discrepancies: Vec<KnownDiscrepancy>,
    }
    let f: File = serde_json::from_str(KNOWN)?;
    Ok(f.known_discrepancies)
}

/// Cases whose id matches `filter` at the start.
pub fn select(filter: &str) -> Result<Vec<ReproCase>, HarnessError> {
    let re = Regex::new(&format!("^(?:{filter})"))?;
    let cases: Vec<ReproCase> = load_cases()?.into_iter().filter(|c| re.is_match(&c.id)).collect();
    if cases.is_empty() {
        return Err(HarnessError::UnknownCase(filter.to_string()));
    }
    Ok(cases)
}

/// Run the matching cases concurrently at the given precision; the report
/// keeps data-file order.
pub fn run_all(filter: &str, precision_bits: u32) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let cases = select(filter)?;
    let known: BTreeMap<String, KnownDiscrepancy> = load_known()?.into_iter().map(|k| (k.id.clone(), k)).collect();
    series_core::set_default_precision(precision_bits);
    let cache = ops::Cache::default();
    let results: Vec<CaseResult> = cases.par_iter().map(|c| run_case(c, &cache, known.get(&c.id))).collect();
    let mut summary = Summary { pass: 0, fail: 0, known_discrepancy: 0, error: 0 };
    for r in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::KnownDiscrepancy => summary.known_discrepancy += 1,
            Status::Error => summary.error += 1,
        }
    }
    let mut by_criterion: BTreeMap<u8, Vec<&CaseResult>> = BTreeMap::new();
    for r in &results {
        if let Some(k) = r.criterion {
            by_criterion.entry(k).or_default().push(r);
        }
    }
    let criteria = by_criterion
        .into_iter()
        .map(|(criterion, rs)| {
            let worst = if rs.iter().any(|r| r.status == Status::Error) {
                Status::Error
            } else if rs.iter().any(|r| r.status == Status::Fail) {
                Status::Fail
            } else if rs.iter().any(|r| r.status == Status::KnownDiscrepancy) {
                Status::KnownDiscrepancy
            } else {
                Status::Pass
            };
            CriterionResult { criterion, status: worst, cases: rs.iter().map(|r| r.id.clone()).collect() }
        })
        .collect();
    Ok(Report {
        filter: filter.to_string(),
        precision_bits,
        summary,
        criteria,
        cases: results,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn run_case(case: &ReproCase, cache: &ops::Cache, known: Option<&KnownDiscrepancy>) -> CaseResult {
    let start = Instant::now();
    let (status, outcome, deviation, reason) = match ops::run(case, cache) {
        Err(e) => (Status::Error, Outcome::default(), None, Some(e)),
        Ok(out) => {
            let (ok, dev) = compare(&case.tolerance, &case.expected, &out.computed);
            let status = match (ok, known) {
                (true, _) => Status::Pass,
                (false, Some(_)) => Status::KnownDiscrepancy,
                (false, None) => Status::Fail,
            };
            let reason = if status == Status::KnownDiscrepancy { known.map(|k| k.reason.clone()) } else { None };
            (status, out, dev, reason)
        }
    };
    CaseResult {
        id: case.id.clone(),
        criterion: case.criterion,
        op: case.op.clone(),
        provenance: case.provenance,
        source: case.source.clone(),
        status,
        expected: case.expected.clone(),
        computed: outcome.computed,
        tolerance: case.tolerance,
        deviation,
        detail: outcome.detail,
        reason,
        seconds: (start.elapsed().as_secs_f64() * 100.0).round() / 100.0,
    }
}
