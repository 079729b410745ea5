//! Sweep harness: each named check enumerates a family of inputs, evaluates
//! a count against a bound (or both sides of an identity) on every input,
//! and aggregates the verdicts into a report.
//!
//! Every observation asserts `lhs <= rhs`, or `lhs = rhs` for identities.
//! Inputs are JSON values, so a violation witness carries everything needed
//! to evaluate it again.

mod checks;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::Verdict;
use crate::error::{Error, Result};

pub use checks::standard_entries;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Tight instances listed in a report; the full number is always given.
pub const TIGHT_LIST_MAX: usize = 256;

/// Family parameters. Each check reads the fields it needs and falls back
/// to its own defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qs: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub general: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_range: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Params {
    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(DEFAULT_TOLERANCE)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub name: String,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub seed: u64,
    /// Keep one row per instance in the report.
    #[serde(default)]
    pub verbose: bool,
}

impl CheckSpec {
    pub fn new(name: impl Into<String>) -> Self {
        CheckSpec {
            name: name.into(),
            params: Params::default(),
            seed: 0,
            verbose: false,
        }
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckClass {
    /// A proved statement: a violation is a bug.
    Theorem,
    /// An open statement: a violation is a discovery.
    Conjecture,
}

/// One evaluated input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub input: Value,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub violation: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight: Option<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

pub type FamilyFn = fn(&CheckSpec) -> Result<Vec<Value>>;
pub type EvalFn = fn(&CheckSpec, &Value) -> Result<Observation>;

#[derive(Clone, Copy)]
pub struct CheckEntry {
    pub name: &'static str,
    pub class: CheckClass,
    pub summary: &'static str,
    pub family: FamilyFn,
    pub eval: EvalFn,
}

#[derive(Clone)]
pub struct Registry {
    entries: Vec<CheckEntry>,
}

impl Registry {
    pub fn standard() -> Self {
        Registry {
            entries: standard_entries(),
        }
    }

    /// Adds or replaces an entry.
    pub fn insert(&mut self, entry: CheckEntry) {
        self.entries.retain(|e| e.name != entry.name);
        self.entries.push(entry);
    }

    pub fn get(&self, name: &str) -> Result<&CheckEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownCheck(name.to_string()))
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub class: CheckClass,
    pub params: Params,
    pub seed: u64,
    pub tolerance: f64,
    /// Tolerance, caps and worker count in effect.
    pub settings: BTreeMap<String, String>,
    pub instances: usize,
    pub pass: bool,
    pub verdicts: BTreeMap<String, usize>,
    pub tight_count: usize,
    pub tight: Vec<String>,
    pub violations: Vec<Observation>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Observation>,
}

impl Report {
    /// The report with the timing zeroed, for byte comparisons.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

pub fn run_check(spec: &CheckSpec) -> Result<Report> {
    run_check_in(&Registry::standard(), spec)
}

pub fn run_check_in(registry: &Registry, spec: &CheckSpec) -> Result<Report> {
    let entry = registry.get(&spec.name)?;
    let start = Instant::now();
    let inputs = (entry.family)(spec)?;
    let observations: Vec<Observation> = inputs
        .par_iter()
        .map(|input| (entry.eval)(spec, input))
        .collect::<Result<_>>()?;
    let mut verdicts = BTreeMap::new();
    let mut tight = std::collections::BTreeSet::new();
    let mut violations = Vec::new();
    for o in &observations {
        *verdicts.entry(format!("{:?}", o.verdict)).or_insert(0) += 1;
        if let Some(t) = &o.tight {
            tight.insert(t.clone());
        }
        if o.violation {
            violations.push(o.clone());
        }
    }
    let tight_count = tight.len();
    Ok(Report {
        check: spec.name.clone(),
        class: entry.class,
        params: spec.params.clone(),
        seed: spec.seed,
        tolerance: spec.params.tolerance(),
        settings: settings(spec),
        instances: observations.len(),
        pass: violations.is_empty(),
        verdicts,
        tight_count,
        tight: tight.into_iter().take(TIGHT_LIST_MAX).collect(),
        violations,
        elapsed_ms: start.elapsed().as_millis() as u64,
        rows: if spec.verbose { observations } else { Vec::new() },
    })
}

fn settings(spec: &CheckSpec) -> BTreeMap<String, String> {
    use crate::count::{CYCLE_COVER_MAX_N, MATCHING_MAX_COMPONENT, PERMANENT_MAX_N};
    use crate::graph::{ALL_GRAPHS_MAX_N, BIPARTITE_MAX_HALF_N, REGULAR_MAX_N};
    let mut m = BTreeMap::new();
    m.insert("tolerance".to_string(), format!("{:e}", spec.params.tolerance()));
    m.insert("cap.regular_n".into(), REGULAR_MAX_N.to_string());
    m.insert("cap.bipartite_half_n".into(), BIPARTITE_MAX_HALF_N.to_string());
    m.insert("cap.all_graphs_n".into(), ALL_GRAPHS_MAX_N.to_string());
    m.insert("cap.permanent_n".into(), PERMANENT_MAX_N.to_string());
    m.insert("cap.matching_component".into(), MATCHING_MAX_COMPONENT.to_string());
    m.insert("cap.cycle_cover_n".into(), CYCLE_COVER_MAX_N.to_string());
    m.insert("cap.root_lcm".into(), crate::bounds::ROOT_LCM_MAX.to_string());
    m.insert("binomial_entropy_c".into(), format!("{} (empirical)", crate::entropy::BINOMIAL_ENTROPY_C));
    m.insert("workers".into(), rayon::current_num_threads().to_string());
    m
}

pub fn sweep(specs: &[CheckSpec]) -> Result<Vec<Report>> {
    sweep_in(&Registry::standard(), specs)
}

pub fn sweep_in(registry: &Registry, specs: &[CheckSpec]) -> Result<Vec<Report>> {
    specs.iter().map(|s| run_check_in(registry, s)).collect()
}

/// Evaluates a recorded observation again and reports whether both sides
/// and the verdict come out the same.
pub fn replay(spec: &CheckSpec, witness: &Observation) -> Result<bool> {
    replay_in(&Registry::standard(), spec, witness)
}

pub fn replay_in(registry: &Registry, spec: &CheckSpec, witness: &Observation) -> Result<bool> {
    let again = (registry.get(&spec.name)?.eval)(spec, &witness.input)?;
    Ok(again.lhs == witness.lhs && again.rhs == witness.rhs && again.verdict == witness.verdict)
}

/// 0 when every report passes, 1 otherwise.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::invalid(format!("unknown format `{s}` (json or csv)"))),
        }
    }
}

pub fn render_reports(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(reports),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One summary row per report, or one row per instance for verbose runs.
fn render_csv(reports: &[Report]) -> String {
    let verbose = reports.iter().any(|r| !r.rows.is_empty());
    let mut out = String::new();
    if verbose {
        out.push_str("check,input,lhs,rhs,verdict,violation\n");
        for r in reports {
            for o in &r.rows {
                let fields = [
                    r.check.clone(),
                    o.input.to_string(),
                    o.lhs.clone(),
                    o.rhs.clone(),
                    format!("{:?}", o.verdict),
                    o.violation.to_string(),
                ];
                out.push_str(&fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
    } else {
        out.push_str("check,class,seed,instances,pass,violations,tight,elapsed_ms\n");
        for r in reports {
            let class = serde_json::to_value(r.class).expect("serializes");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                csv_field(&r.check),
                class.as_str().unwrap_or_default(),
                r.seed,
                r.instances,
                r.pass,
                r.violations.len(),
                r.tight_count,
                r.elapsed_ms
            ));
        }
    }
    out
}

/// Writes the rendered reports to `path`, or to stdout when `path` is None.
pub fn emit(reports: &[Report], format: Format, path: Option<&Path>) -> Result<()> {
    let text = render_reports(reports, format);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

/// Reads a JSON list of check specs.
pub fn read_specs(path: &Path) -> Result<Vec<CheckSpec>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

/// Reads reports written by [`emit`] in JSON.
pub fn read_reports(path: &Path) -> Result<Vec<Report>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::parse(e.line(), e.to_string()))
}
