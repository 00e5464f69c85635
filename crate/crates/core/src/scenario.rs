//! JSON scenario files, their evaluation, and report rendering.
//!
//! A scenario file looks like
//!
//! ```json
//! {
//!   "schema": 1,
//!   "scenarios": [
//!     {"name": "quartic", "kind": "local-genus1",
//!      "payload": {"beta": "1/4", "model": {"model": "capacity", "p": 2, "cpc": 1}},
//!      "expected": 2}
//!   ]
//! }
//! ```
//!
//! Every scenario produces exactly one row; a malformed scenario yields an
//! error row and never aborts its siblings. Rows are emitted in file order
//! and the machine-readable output contains no timestamps, so reports are
//! byte-identical for identical inputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brauer::{
    global_index, restrict_global, GlobalClass, GlobalExtensionProfile, LocalClass,
};
use crate::curve::CurveModel;
use crate::error::Error;
use crate::euler::{
    alternating_binomial_sum, fm_twisted_rank, leading_coefficient_times_factorial,
    period_index_bound_check, twisted_euler_char, NumericalPolynomial, RRInput,
};
use crate::invariant::Invariant;

use crate::reduction::{
    capacity_closed_form, general_index_reduction, genus1_index_reduction_gcd,
    genus1_index_reduction_min, homogeneous_reduction_check, iota_with_witness, sufficient_bound,
    svdb_divisibility_check, ClosedFormInput, ModuliData, ObstructedPoint,
};
use crate::triangle::{TriangleGrid, TriangleOutcome};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "local-genus1")]
    LocalGenus1,
    #[serde(rename = "iota")]
    Iota,
    #[serde(rename = "general")]
    General,
    #[serde(rename = "global")]
    Global,
    #[serde(rename = "rr")]
    RiemannRoch,
    #[serde(rename = "fm")]
    FourierMukai,
    #[serde(rename = "hilbert")]
    Hilbert,
}

impl ScenarioKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioKind::LocalGenus1 => "local-genus1",
            ScenarioKind::Iota => "iota",
            ScenarioKind::General => "general",
            ScenarioKind::Global => "global",
            ScenarioKind::RiemannRoch => "rr",
            ScenarioKind::FourierMukai => "fm",
            ScenarioKind::Hilbert => "hilbert",
        }
    }
}

/// Expected outcome of a regression scenario: a value, or a failure with a
/// given error code (`{"error": "no-points"}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expected {
    Error { error: String },
    Value(Value),
}

impl Expected {
    fn render(&self) -> String {
        match self {
            Expected::Error { error } => format!("error:{error}"),
            Expected::Value(Value::String(s)) => s.clone(),
            Expected::Value(v) => v.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: Option<String>,
    pub kind: ScenarioKind,
    pub payload: Value,
    #[serde(default)]
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    schema: u32,
    #[serde(default)]
    scenarios: Vec<Value>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides the search bound of every genus-1 scenario.
    pub bound: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowError {
    pub code: String,
    pub message: String,
    #[serde(skip)]
    pub input: bool,
}

impl RowError {
    fn schema(message: impl Into<String>) -> Self {
        RowError {
            code: "schema".into(),
            message: message.into(),
            input: true,
        }
    }
}

impl From<Error> for RowError {
    fn from(e: Error) -> Self {
        RowError {
            code: e.code().into(),
            message: e.to_string(),
            input: e.is_input_error(),
        }
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub index: usize,
    pub name: String,
    pub kind: String,
    pub formula: String,
    pub value: Option<String>,
    pub bound: Option<u64>,
    /// Value of every route that was computed, keyed by route name.
    pub routes: BTreeMap<String, String>,
    pub witnesses: BTreeMap<String, String>,
    /// True iff all computed routes coincide (and none failed).
    pub agreement: bool,
    pub expected: Option<String>,
    pub expected_match: Option<bool>,
    pub error: Option<RowError>,
}

impl ReportRow {
    fn new(index: usize, name: String, kind: &str, formula: &str) -> Self {
        ReportRow {
            index,
            name,
            kind: kind.into(),
            formula: formula.into(),
            value: None,
            bound: None,
            routes: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            agreement: false,
            expected: None,
            expected_match: None,
            error: None,
        }
    }

    fn route(&mut self, name: &str, value: impl ToString) {
        self.routes.insert(name.into(), value.to_string());
    }

    fn witness(&mut self, name: &str, value: impl ToString) {
        self.witnesses.insert(name.into(), value.to_string());
    }

    fn fail(mut self, err: impl Into<RowError>) -> Self {
        self.error = Some(err.into());
        self.agreement = false;
        self
    }

    /// Whether the row counts as a success for the exit status.
    pub fn passed(&self) -> bool {
        match (&self.error, self.expected_match) {
            (Some(_), Some(true)) => true,
            (Some(_), _) => false,
            (None, Some(false)) => false,
            (None, _) => self.agreement,
        }
    }

    fn is_input_error(&self) -> bool {
        self.error.as_ref().is_some_and(|e| e.input) && self.expected_match != Some(true)
    }

    fn apply_expected(&mut self, expected: &Expected) {
        self.expected = Some(expected.render());
        let matched = match (expected, &self.error, &self.value) {
            (Expected::Error { error }, Some(e), _) => *error == e.code,
            (Expected::Error { .. }, None, _) => false,
            (Expected::Value(_), Some(_), _) => false,
            (Expected::Value(v), None, Some(value)) => value_matches(v, value),
            (Expected::Value(_), None, None) => false,
        };
        self.expected_match = Some(matched);
    }
}

fn value_matches(expected: &Value, actual: &str) -> bool {
    match expected {
        Value::String(s) => s.trim() == actual,
        Value::Bool(b) => b.to_string() == actual,
        Value::Number(n) => n.to_string() == actual,
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: u32,
    rows: &'a [ReportRow],
    summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(ReportRow::is_input_error) {
            exit::INPUT_ERROR
        } else if self.rows.iter().all(ReportRow::passed) {
            exit::SUCCESS
        } else {
            exit::FAILURE
        }
    }

    pub fn summary(&self) -> Summary {
        let passed = self.rows.iter().filter(|r| r.passed()).count();
        Summary {
            total: self.rows.len(),
            passed,
            failed: self.rows.len() - passed,
            exit_code: self.exit_code(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = JsonReport {
            schema: SCHEMA_VERSION,
            rows: &self.rows,
            summary: self.summary(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }

    /// Aligned plain-text table followed by a summary line.
    pub fn to_text(&self, color: bool) -> String {
        let header = ["#", "kind", "name", "value", "routes", "status"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                let routes = r
                    .routes
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let status = if r.passed() { "ok" } else { "FAIL" };
                let mut status = status.to_string();
                if let Some(e) = &r.error {
                    let _ = write!(status, " [{}]", e.code);
                }
                if r.expected_match == Some(false) {
                    let _ = write!(status, " expected {}", r.expected.as_deref().unwrap_or("?"));
                }
                [
                    r.index.to_string(),
                    r.kind.clone(),
                    r.name.clone(),
                    r.value.clone().unwrap_or_else(|| "-".into()),
                    routes,
                    status,
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, row: &[String]| {
            let mut s = String::new();
            for (i, (c, w)) in row.iter().zip(widths).enumerate() {
                if i + 1 == row.len() {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ");
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&mut out, &header.map(String::from));
        for (row, r) in cells.iter().zip(&self.rows) {
            let mut row = row.clone();
            if color {
                row[5] = if r.passed() {
                    format!("\x1b[32m{}\x1b[0m", row[5])
                } else {
                    format!("\x1b[31m{}\x1b[0m", row[5])
                };
            }
            line(&mut out, &row);
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "{} scenario(s): {} passed, {} failed (exit {})",
            s.total, s.passed, s.failed, s.exit_code
        );
        out
    }
}

/// A file-level failure: nothing could be evaluated.
#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed scenario file: {0}")]
    Parse(String),
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
}

impl SuiteError {
    pub fn exit_code(&self) -> i32 {
        exit::INPUT_ERROR
    }
}

pub fn run_suite(path: &Path, opts: &RunOptions) -> Result<Report, SuiteError> {
    let text = std::fs::read_to_string(path).map_err(|source| SuiteError::Io {
        path: path.display().to_string(),
        source,
    })?;
    run_suite_str(&text, opts)
}

pub fn run_suite_str(text: &str, opts: &RunOptions) -> Result<Report, SuiteError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| SuiteError::Parse(e.to_string()))?;
    if file.schema != SCHEMA_VERSION {
        return Err(SuiteError::Schema(file.schema));
    }
    let rows = file
        .scenarios
        .into_iter()
        .enumerate()
        .map(|(index, raw)| run_raw(index, raw, opts))
        .collect();
    Ok(Report { rows })
}

fn run_raw(index: usize, raw: Value, opts: &RunOptions) -> ReportRow {
    let fallback_name = raw
        .get("name")
        .and_then(Value::as_str)
        .map_or_else(|| format!("#{index}"), str::to_string);
    let fallback_kind = raw
        .get("kind")
        .and_then(Value::as_str)
        .unwrap_or("?")
        .to_string();
    match serde_json::from_value::<Scenario>(raw) {
        Ok(s) => run_scenario_at(index, &s, opts),
        Err(e) => ReportRow::new(index, fallback_name, &fallback_kind, "-")
            .fail(RowError::schema(e.to_string())),
    }
}

/// Evaluates one scenario into a report row.
pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> ReportRow {
    run_scenario_at(0, s, opts)
}

fn run_scenario_at(index: usize, s: &Scenario, opts: &RunOptions) -> ReportRow {
    let name = s.name.clone().unwrap_or_else(|| format!("#{index}"));
    let row = ReportRow::new(index, name, s.kind.as_str(), formula_of(s.kind));
    let mut row = match s.kind {
        ScenarioKind::LocalGenus1 => {
            with_payload(row, &s.payload, |row, p| local_genus1(row, p, opts))
        }
        ScenarioKind::Iota => with_payload(row, &s.payload, iota_row),
        ScenarioKind::General => with_payload(row, &s.payload, general_row),
        ScenarioKind::Global => with_payload(row, &s.payload, global_row),
        ScenarioKind::RiemannRoch => with_payload(row, &s.payload, rr_row),
        ScenarioKind::FourierMukai => with_payload(row, &s.payload, fm_row),
        ScenarioKind::Hilbert => with_payload(row, &s.payload, hilbert_row),
    };
    if let Some(expected) = &s.expected {
        row.apply_expected(expected);
    }
    row
}

fn formula_of(kind: ScenarioKind) -> &'static str {
    match kind {
        ScenarioKind::LocalGenus1 => "min{[E:k] : beta split by C_E}",
        ScenarioKind::Iota => "min_p [k(p):k] ind(alpha(p) + beta)",
        ScenarioKind::General => "min_{r|i, d in [0,D)} r iota_beta(r, rd)",
        ScenarioKind::Global => "lcm_v ind(inv_v)",
        ScenarioKind::RiemannRoch => "deg + rank (1 - g)",
        ScenarioKind::FourierMukai => "n^g",
        ScenarioKind::Hilbert => "sum_j (-1)^j C(t,j) chi(m+t-j)",
    }
}

fn with_payload<P: serde::de::DeserializeOwned>(
    row: ReportRow,
    payload: &Value,
    f: impl FnOnce(ReportRow, P) -> ReportRow,
) -> ReportRow {
    match serde_json::from_value::<P>(payload.clone()) {
        Ok(p) => f(row, p),
        Err(e) => row.fail(RowError::schema(e.to_string())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalGenus1Payload {
    beta: Invariant,
    model: CurveModel,
    #[serde(default)]
    bound: Option<u64>,
}

fn local_genus1(mut row: ReportRow, p: LocalGenus1Payload, opts: &RunOptions) -> ReportRow {
    let beta = LocalClass::new(p.beta);
    let bound = match opts.bound.or(p.bound) {
        Some(b) => b,
        None => match sufficient_bound(&beta, &p.model) {
            Ok(b) => b,
            Err(e) => return row.fail(e),
        },
    };
    row.bound = Some(bound);
    let mut first_err = None;
    let mut values = Vec::new();
    let mut record = |row: &mut ReportRow, name: &str, r: crate::Result<u64>| match r {
        Ok(v) => {
            row.route(name, v);
            values.push(v);
        }
        Err(e) => {
            row.route(name, format!("error:{}", e.code()));
            first_err.get_or_insert(e);
        }
    };
    let min = genus1_index_reduction_min(&beta, &p.model, bound);
    if let Ok(m) = &min {
        row.value = Some(m.to_string());
        row.witness("min_degree", m);
    }
    record(&mut row, "min", min);
    record(
        &mut row,
        "gcd",
        genus1_index_reduction_gcd(&beta, &p.model, bound),
    );
    if let CurveModel::Capacity(model) = &p.model {
        let index = beta.index();
        if let Some(input) = u64::try_from(index)
            .ok()
            .and_then(|i| ClosedFormInput::from_index(i, model.prime()))
        {
            row.witness("m", input.m);
            row.witness("n", input.n);
            record(
                &mut row,
                "closed-form",
                capacity_closed_form(input.m, input.p, input.n, model.capacity()),
            );
        }
    }
    if let Some(e) = first_err {
        return row.fail(e);
    }
    row.agreement = values.windows(2).all(|w| w[0] == w[1]);
    row
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IotaPayload {
    points: Vec<ObstructedPoint>,
    beta: Invariant,
}

fn iota_row(mut row: ReportRow, p: IotaPayload) -> ReportRow {
    match iota_with_witness(&p.points, &p.beta) {
        Ok((value, idx)) => {
            row.value = Some(value.to_string());
            row.route("iota", &value);
            row.witness("point", idx);
            row.witness("residue_degree", p.points[idx].residue_degree());
            row.witness("obstruction", p.points[idx].obstruction());
            row.agreement = true;
            row
        }
        Err(e) => row.fail(e),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralPayload {
    moduli: ModuliData,
    beta: Invariant,
}

fn general_row(mut row: ReportRow, p: GeneralPayload) -> ReportRow {
    let g = match general_index_reduction(&p.moduli, &p.beta) {
        Ok(g) => g,
        Err(e) => return row.fail(e),
    };
    row.value = Some(g.value.to_string());
    row.route("general", &g.value);
    row.witness("r", g.rank);
    row.witness("d", g.degree);
    row.witness("rd", g.stratum_degree());
    row.witness("point", g.point);
    let divides = svdb_divisibility_check(&p.moduli, &p.beta, &g.value);
    row.route("svdb-divisibility", divides);
    if !p.moduli.deg0_points().is_empty() {
        if let Ok(h) = homogeneous_reduction_check(&p.moduli, &p.beta, &g.value) {
            row.witness("homogeneous", h);
        }
    }
    // The divisibility holds for genuine geometric data; failure flags the scenario.
    row.agreement = divides;
    row
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GlobalPayload {
    class: GlobalClass,
    #[serde(default)]
    profile: Option<GlobalExtensionProfile>,
}

fn global_row(mut row: ReportRow, p: GlobalPayload) -> ReportRow {
    let index = global_index(&p.class);
    row.value = Some(index.to_string());
    row.route("index", &index);
    row.agreement = true;
    if let Some(profile) = &p.profile {
        match restrict_global(&p.class, profile) {
            Ok(r) => {
                let restricted = global_index(&r);
                row.route("restricted-index", &restricted);
                row.witness(
                    "restricted",
                    serde_json::to_string(&r).expect("class serializes"),
                );
                row.agreement = index.is_multiple_of(&restricted);
            }
            Err(e) => return row.fail(e),
        }
    }
    row
}

fn rr_row(mut row: ReportRow, p: RRInput) -> ReportRow {
    if let Err(e) = RRInput::new(p.deg, p.rank, p.genus) {
        return row.fail(e);
    }
    let chi = twisted_euler_char(&p);
    row.value = Some(chi.to_string());
    row.route("chi", &chi);
    row.agreement = true;
    row
}

/// `n` drives the rank computation, `(per, ind)` the period-index
/// predicate; at least one of the two must be present. Without `n` the
/// row's value is the predicate.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FmPayload {
    g: u32,
    #[serde(default)]
    n: Option<u64>,
    #[serde(default)]
    per: Option<u64>,
    #[serde(default)]
    ind: Option<u64>,
    #[serde(default)]
    odd_order: bool,
}

fn fm_row(mut row: ReportRow, p: FmPayload) -> ReportRow {
    let check = match (p.per, p.ind) {
        (Some(per), Some(ind)) => Some(period_index_bound_check(per, ind, p.g, p.odd_order)),
        (None, None) => None,
        _ => {
            return row.fail(Error::InvalidInput(
                "per and ind must be given together".into(),
            ))
        }
    };
    match p.n {
        Some(0) => return row.fail(Error::InvalidInput("n must be positive".into())),
        Some(n) => {
            let rank = fm_twisted_rank(p.g, n);
            row.value = Some(rank.to_string());
            row.route("rank", &rank);
        }
        None if check.is_none() => {
            return row.fail(Error::InvalidInput(
                "fm payload needs n or (per, ind)".into(),
            ))
        }
        None => row.value = check.map(|c| c.to_string()),
    }
    if let Some(c) = check {
        row.route("ind | per^g", c);
    }
    row.agreement = true;
    row
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HilbertPayload {
    chi: NumericalPolynomial,
    t: u32,
    #[serde(default)]
    m: i64,
}

fn hilbert_row(mut row: ReportRow, p: HilbertPayload) -> ReportRow {
    let sum = alternating_binomial_sum(&p.chi, p.t, &BigInt::from(p.m));
    row.value = Some(sum.to_string());
    row.route("alternating-sum", &sum);
    row.witness("integer_valued", p.chi.is_integer_valued());
    row.agreement = true;
    match p.chi.degree() {
        Some(d) if d == p.t as usize => match leading_coefficient_times_factorial(&p.chi, p.t) {
            Ok(lead) => {
                row.route("t!-leading", &lead);
                row.agreement = lead == sum;
            }
            Err(e) => return row.fail(e),
        },
        Some(d) if d > p.t as usize => {}
        // Degree below t (or the zero polynomial): the difference vanishes.
        _ => {
            row.route("t!-leading", 0);
            row.agreement = sum == num_rational::BigRational::from_integer(0.into());
        }
    }
    row
}

/// Runs the capacity triangle over `grid`, one row per case.
pub fn verify_triangle(grid: &TriangleGrid) -> Report {
    let rows = grid
        .cases()
        .iter()
        .enumerate()
        .map(|(index, case)| triangle_row(index, &case.evaluate()))
        .collect();
    Report { rows }
}

fn triangle_row(index: usize, out: &TriangleOutcome) -> ReportRow {
    let c = out.case;
    let name = format!("m={} p={} n={} cpc={}", c.m, c.p, c.n, c.cpc);
    let mut row = ReportRow::new(index, name, "triangle", "min = gcd = closed form");
    row.bound = out.bound;
    row.witness(
        "beta",
        format!("1/{}", c.beta_index().map_or("?".into(), |i| i.to_string())),
    );
    if let Some(e) = &out.error {
        return row.fail(e.clone());
    }
    for (route, v) in [
        ("min", out.min),
        ("gcd", out.gcd),
        ("closed-form", out.closed_form),
    ] {
        if let Some(v) = v {
            row.route(route, v);
        }
    }
    row.value = out.closed_form.map(|v| v.to_string());
    row.agreement = out.agrees();
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn scenario(kind: &str, payload: Value) -> Scenario {
        serde_json::from_value(json!({"kind": kind, "payload": payload})).unwrap()
    }

    #[test]
    fn local_genus1_row() {
        let s = scenario(
            "local-genus1",
            json!({"beta": "1/4", "model": {"model": "capacity", "p": 2, "cpc": 1}}),
        );
        let row = run_scenario(&s, &RunOptions::default());
        assert_eq!(row.value.as_deref(), Some("2"));
        assert_eq!(row.routes["min"], "2");
        assert_eq!(row.routes["gcd"], "2");
        assert_eq!(row.routes["closed-form"], "2");
        assert_eq!(row.bound, Some(16));
        assert!(row.agreement);
    }

    #[test]
    fn local_genus1_bound_override_and_exhaustion() {
        let s = scenario(
            "local-genus1",
            json!({"beta": "1/4", "model": {"model": "capacity", "p": 2, "cpc": 0}}),
        );
        let row = run_scenario(&s, &RunOptions { bound: Some(2) });
        assert_eq!(row.error.as_ref().unwrap().code, "bound-exhausted");
        assert!(!row.agreement);
        assert!(!row.passed());
    }

    #[test]
    fn rr_row_value() {
        let row = run_scenario(
            &scenario("rr", json!({"deg": 3, "rank": 2, "genus": 1})),
            &RunOptions::default(),
        );
        assert_eq!(row.value.as_deref(), Some("3"));
        assert!(row.passed());
    }

    #[test]
    fn iota_empty_points() {
        let row = run_scenario(
            &scenario("iota", json!({"points": [], "beta": "1/2"})),
            &RunOptions::default(),
        );
        let err = row.error.as_ref().unwrap();
        assert_eq!(err.code, "no-points");
        assert!(err.message.contains("no points"));
        assert!(!row.passed());
    }

    #[test]
    fn expected_error_matches() {
        let s: Scenario = serde_json::from_value(json!({
            "kind": "iota", "payload": {"points": [], "beta": "1/2"},
            "expected": {"error": "no-points"}
        }))
        .unwrap();
        let row = run_scenario(&s, &RunOptions::default());
        assert_eq!(row.expected_match, Some(true));
        assert!(row.passed());
    }

    #[test]
    fn malformed_scenario_does_not_abort_batch() {
        let text = json!({
            "schema": 1,
            "scenarios": [
                {"kind": "rr", "payload": {"deg": 1, "rank": 1, "genus": 0}, "expected": 2},
                {"kind": "nonsense", "payload": {}},
                {"kind": "rr", "payload": {"deg": "x"}},
                {"kind": "rr", "payload": {"deg": 0, "rank": 1, "genus": 0}, "expected": "1"}
            ]
        })
        .to_string();
        let report = run_suite_str(&text, &RunOptions::default()).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.rows[0].passed());
        assert_eq!(report.rows[1].error.as_ref().unwrap().code, "schema");
        assert_eq!(report.rows[2].error.as_ref().unwrap().code, "schema");
        assert!(report.rows[3].passed());
        assert_eq!(report.exit_code(), exit::INPUT_ERROR);
    }

    #[test]
    fn exit_codes() {
        let ok = json!({"schema": 1, "scenarios": [
            {"kind": "rr", "payload": {"deg": 3, "rank": 2, "genus": 1}, "expected": 3}
        ]});
        let wrong = json!({"schema": 1, "scenarios": [
            {"kind": "rr", "payload": {"deg": 3, "rank": 2, "genus": 1}, "expected": 4}
        ]});
        let empty = json!({"schema": 1, "scenarios": []});
        let run = |v: &Value| run_suite_str(&v.to_string(), &RunOptions::default()).unwrap();
        assert_eq!(run(&ok).exit_code(), exit::SUCCESS);
        assert_eq!(run(&wrong).exit_code(), exit::FAILURE);
        let e = run(&empty);
        assert_eq!(e.exit_code(), exit::SUCCESS);
        assert!(e.rows.is_empty());
    }

    #[test]
    fn file_level_errors() {
        assert!(matches!(
            run_suite_str("not json", &RunOptions::default()),
            Err(SuiteError::Parse(_))
        ));
        assert!(matches!(
            run_suite_str(r#"{"schema": 7, "scenarios": []}"#, &RunOptions::default()),
            Err(SuiteError::Schema(7))
        ));
        assert!(matches!(
            run_suite(Path::new("/nonexistent/file.json"), &RunOptions::default()),
            Err(SuiteError::Io { .. })
        ));
    }

    #[test]
    fn general_row_routes() {
        let s = scenario(
            "general",
            json!({
                "moduli": {"i": 2, "D": 1, "delta": 1,
                    "strata": [
                        {"r": 1, "d": 0, "points": [{"residue_degree": 1, "obstruction": "1/2"}]},
                        {"r": 2, "d": 0, "points": [{"residue_degree": 1, "obstruction": "0/1"}]}
                    ],
                    "deg0_points": [{"residue_degree": 1, "obstruction": "1/2"}]},
                "beta": "1/2"
            }),
        );
        let row = run_scenario(&s, &RunOptions::default());
        assert_eq!(row.value.as_deref(), Some("1"));
        assert_eq!(row.routes["svdb-divisibility"], "true");
        assert_eq!(row.witnesses["homogeneous"], "true");
        assert!(row.agreement);
    }

    #[test]
    fn global_row_restriction() {
        let s = scenario(
            "global",
            json!({
                "class": {"places": {"v1": "1/4", "v2": "3/4"}},
                "profile": {"total_degree": 2, "places": {"v1": [2], "v2": [1, 1]}}
            }),
        );
        let row = run_scenario(&s, &RunOptions::default());
        assert_eq!(row.value.as_deref(), Some("4"));
        assert_eq!(row.routes["restricted-index"], "4");
        assert!(row.agreement);

        let bad = scenario("global", json!({"class": {"places": {"v1": "1/4"}}}));
        let row = run_scenario(&bad, &RunOptions::default());
        assert_eq!(row.error.as_ref().unwrap().code, "schema");
    }

    #[test]
    fn fm_and_hilbert_rows() {
        let row = run_scenario(
            &scenario("fm", json!({"g": 2, "n": 3, "per": 2, "ind": 4})),
            &RunOptions::default(),
        );
        assert_eq!(row.value.as_deref(), Some("9"));
        assert_eq!(row.routes["ind | per^g"], "true");

        let row = run_scenario(
            &scenario(
                "hilbert",
                json!({"chi": {"coeffs": ["0", "1", "0", "1/2"]}, "t": 3, "m": 7}),
            ),
            &RunOptions::default(),
        );
        assert_eq!(row.value.as_deref(), Some("3"));
        assert_eq!(row.routes["t!-leading"], "3");
        assert_eq!(row.witnesses["integer_valued"], "false");
        assert!(row.agreement);
    }

    #[test]
    fn reports_are_deterministic() {
        let grid = TriangleGrid {
            pmax: 3,
            nmax: 2,
            cpcmax: 1,
            mmax: 2,
        };
        let a = verify_triangle(&grid).to_json();
        let b = verify_triangle(&grid).to_json();
        assert_eq!(a, b);
        assert!(verify_triangle(&grid).to_text(false).contains("passed"));
    }
}
