//! Corpus sweeps: evaluate every (graph, condition, k) triple, aggregate, and
//! emit a report.
//!
//! Graphs are pulled from the corpus stream in fixed-size chunks; each chunk
//! is evaluated in parallel and merged in stream order, so the report does
//! not depend on the worker count.

use std::collections::BTreeSet;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use spectral_gate_core::connectivity::g_class_membership;
use spectral_gate_core::spectra::SpectralSummary;
use spectral_gate_core::theorems::{
    catalog, evaluate_structural, find_condition, quotient_lemma_violations, small_cut_side_violation,
    spectral_lemma_violations, structural_checks, ClassMode, ClassRequirement, ConditionSpec, ConditionVerdict,
    GraphProfile, SpectralOutcome, StructuralCheck, TheoremError,
};
use spectral_gate_core::{Multigraph, VertexPartition};
use thiserror::Error;

use crate::corpus::{self, CorpusError, CorpusItem, CorpusSpec};
use crate::formats::encode;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "SPECTRAL_GATE_THREADS";
/// Graphs handed to the worker pool at a time.
pub const CHUNK_SIZE: usize = 2048;
/// Largest order for the exhaustive small-cut lemma check.
pub const CUT_LEMMA_MAX_ORDER: usize = 10;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("{0} is not a valid worker count")]
    Threads(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Check the conditions as stated; any inconsistency is a counterexample.
    Sweep,
    /// Drop the class requirement and report graphs outside the class whose
    /// remaining hypotheses hold. Conclusion failures are findings.
    SearchOutsideG,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

/// Per-graph summary row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub source: usize,
    pub index: usize,
    pub graph: String,
    pub n: usize,
    pub m: u64,
    pub min_degree: u64,
    pub max_degree: u64,
    pub kappa: u64,
    pub tau: u64,
    pub lambda_3: Option<f64>,
    pub q_2: Option<f64>,
    pub q_3: Option<f64>,
    pub mu_n_minus_2: Option<f64>,
    /// `None` when membership was undecided or not needed.
    pub in_class: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionAggregate {
    pub id: String,
    pub k: u64,
    /// Connected graphs that reached this condition.
    pub evaluated: u64,
    pub applicable: u64,
    pub degree_ok: u64,
    /// Hypothesis held (in search mode: held outside the class).
    pub fired: u64,
    pub consistent: u64,
    pub boundary: u64,
    pub unexplained_boundary: u64,
    /// Smallest margin among firing graphs.
    pub min_positive_margin: Option<f64>,
    /// Class membership could not be decided.
    pub undecided: u64,
    /// Search mode: hypothesis held but the graph is in the class.
    pub in_class_skipped: u64,
    /// Never fired on this corpus.
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralAggregate {
    pub id: String,
    pub k: u64,
    pub fired: u64,
    pub held: u64,
}

/// A verdict worth keeping, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub source: usize,
    pub index: usize,
    pub graph: String,
    pub condition: String,
    pub k: u64,
    pub min_degree: u64,
    pub max_degree: u64,
    pub l: Option<u64>,
    pub spectral_value: Option<f64>,
    /// Exact threshold as `p/q`.
    pub threshold: Option<String>,
    pub threshold_value: Option<f64>,
    pub margin: Option<f64>,
    pub conclusion_value: u64,
    pub conclusion_holds: bool,
}

impl VerdictReport {
    fn new(item: &CorpusItem, graph: &str, v: &ConditionVerdict) -> Self {
        Self {
            source: item.source,
            index: item.index,
            graph: graph.to_owned(),
            condition: v.condition_id.to_owned(),
            k: v.k,
            min_degree: v.min_degree,
            max_degree: v.max_degree,
            l: v.l,
            spectral_value: v.spectral_value,
            threshold: v.threshold.map(|t| t.to_string()),
            threshold_value: v.threshold_f64(),
            margin: v.margin,
            conclusion_value: v.conclusion_value,
            conclusion_holds: v.conclusion_holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralFailure {
    pub source: usize,
    pub index: usize,
    pub graph: String,
    pub id: String,
    pub k: u64,
    pub r: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Issue {
    pub source: usize,
    pub index: usize,
    pub graph: String,
    pub what: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub graphs_seen: u64,
    pub graphs_evaluated: u64,
    pub graphs_filtered: u64,
    /// Disconnected graphs kept by the filters; recorded but not evaluated.
    pub graphs_disconnected: u64,
    /// Graphs with at least one undecided class membership.
    pub graphs_undecided: u64,
    pub counterexamples: u64,
    pub unexplained_boundary: u64,
    pub structural_failures: u64,
    pub lemma_violations: u64,
    pub errors: u64,
    pub findings: u64,
    pub passed: bool,
}

/// One JSON document describing a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub mode: Mode,
    pub spec: CorpusSpec,
    pub seeds: Vec<u64>,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub generated_at_unix: u64,
    pub summary: Summary,
    pub conditions: Vec<ConditionAggregate>,
    pub structural: Vec<StructuralAggregate>,
    pub counterexamples: Vec<VerdictReport>,
    pub unexplained_boundaries: Vec<VerdictReport>,
    pub structural_failures: Vec<StructuralFailure>,
    pub lemma_violations: Vec<Issue>,
    pub errors: Vec<Issue>,
    pub findings: Vec<VerdictReport>,
    pub records: Vec<GraphRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.passed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timestamp zeroed, for byte-level comparisons.
    pub fn to_canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.generated_at_unix = 0;
        copy.to_json()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn condition(&self, id: &str, k: u64) -> Option<&ConditionAggregate> {
        self.conditions.iter().find(|c| c.id == id && c.k == k)
    }
}

/// Worker count from [`THREADS_ENV`], else the machine's parallelism.
pub fn threads_from_env() -> Result<usize, SweepError> {
    match std::env::var(THREADS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(SweepError::Threads(s)),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

struct Plan {
    mode: Mode,
    conditions: Vec<&'static ConditionSpec>,
    structural: Vec<&'static StructuralCheck>,
    ks: Vec<u64>,
    spec: CorpusSpec,
}

impl Plan {
    fn new(spec: &CorpusSpec, mode: Mode) -> Result<Self, SweepError> {
        let mut conditions: Vec<&'static ConditionSpec> = if spec.conditions.is_empty() {
            catalog().iter().collect()
        } else {
            spec.conditions
                .iter()
                .map(|id| find_condition(id).map_err(|e| CorpusError::Spec(e.to_string())))
                .collect::<Result<_, _>>()?
        };
        if mode == Mode::SearchOutsideG {
            conditions.retain(|c| c.class == ClassRequirement::InClass);
        }
        let structural = if spec.structural && mode == Mode::Sweep {
            structural_checks().iter().collect()
        } else {
            Vec::new()
        };
        let ks: Vec<u64> = spec.k.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(Self {
            mode,
            conditions,
            structural,
            ks,
            spec: spec.clone(),
        })
    }
}

/// What happened to one condition at one `k` on one graph.
enum Cell {
    Verdict(Box<ConditionVerdict>, Option<bool>),
    Undecided,
}

#[derive(Default)]
struct Outcome {
    filtered: bool,
    disconnected: bool,
    undecided: bool,
    record: Option<GraphRecord>,
    cells: Vec<Cell>,
    structural: Vec<(bool, bool, Vec<u64>)>,
    lemma_violations: Vec<&'static str>,
    error: Option<String>,
    encoding: String,
}

fn record(item: &CorpusItem, encoding: &str, s: &SpectralSummary, kappa: u64, tau: u64, in_class: Option<bool>) -> GraphRecord {
    GraphRecord {
        source: item.source,
        index: item.index,
        graph: encoding.to_owned(),
        n: s.n,
        m: s.m,
        min_degree: s.min_degree,
        max_degree: s.max_degree,
        kappa,
        tau,
        lambda_3: s.lambda(3),
        q_2: s.q(2),
        q_3: s.q(3),
        mu_n_minus_2: s.mu_n_minus_2(),
        in_class,
    }
}

fn lemma_checks(profile: &GraphProfile<'_>) -> Result<Vec<&'static str>, TheoremError> {
    let g = profile.graph;
    let n = g.vertex_count();
    let mut bad = spectral_lemma_violations(&profile.summary, true);
    let side = &profile.cut.side;
    if side.is_proper() {
        let labels: Vec<usize> = (0..n).map(|v| usize::from(!side.contains(v))).collect();
        bad.extend(quotient_lemma_violations(g, &VertexPartition::from_labels(&labels)?)?);
    }
    if let Some(dual) = &profile.packing.dual {
        bad.extend(quotient_lemma_violations(g, &dual.parts)?);
    }
    if n <= CUT_LEMMA_MAX_ORDER && small_cut_side_violation(g)?.is_some() {
        bad.push(if g.is_simple() { "LEM-2.6" } else { "LEM-2.7" });
    }
    bad.sort_unstable();
    bad.dedup();
    Ok(bad)
}

fn process(item: &CorpusItem, plan: &Plan) -> Outcome {
    let g = &item.graph;
    let encoding = encode(g);
    let mut out = Outcome {
        encoding,
        ..Outcome::default()
    };
    if g.min_degree() < plan.spec.filters.min_degree {
        out.filtered = true;
        return out;
    }
    if g.vertex_count() < 2 || !g.is_connected() {
        if plan.spec.filters.connected_only || plan.mode == Mode::SearchOutsideG {
            out.filtered = true;
            return out;
        }
        out.disconnected = true;
        if plan.spec.emit_records {
            match SpectralSummary::of(g) {
                Ok(s) => {
                    let in_class = g_class_membership(g).ok().map(|m| m.is_member());
                    out.record = Some(record(item, &out.encoding, &s, 0, 0, in_class));
                }
                Err(e) => out.error = Some(e.to_string()),
            }
        }
        return out;
    }
    if let Err(e) = evaluate_graph(item, plan, &mut out) {
        out.error = Some(e.to_string());
    }
    out
}

fn evaluate_graph(item: &CorpusItem, plan: &Plan, out: &mut Outcome) -> Result<(), TheoremError> {
    let profile = GraphProfile::new(&item.graph)?;
    if plan.spec.filters.g_class_only {
        match profile.in_class() {
            Some(true) => {}
            Some(false) => {
                out.filtered = true;
                return Ok(());
            }
            None => {
                out.undecided = true;
                out.filtered = true;
                return Ok(());
            }
        }
    }

    for spec in &plan.conditions {
        for &k in &plan.ks {
            let cell = match plan.mode {
                Mode::Sweep => match spectral_gate_core::theorems::evaluate_with(&profile, spec, k, ClassMode::Required) {
                    Ok(v) => Cell::Verdict(Box::new(v), None),
                    Err(TheoremError::UndecidedClass(_)) => Cell::Undecided,
                    Err(e) => return Err(e),
                },
                Mode::SearchOutsideG => {
                    let v = spectral_gate_core::theorems::evaluate_with(&profile, spec, k, ClassMode::Ignored)?;
                    let candidate = v.applicable
                        && v.degree_ok
                        && matches!(v.spectral, SpectralOutcome::Holds | SpectralOutcome::Boundary);
                    if !candidate {
                        Cell::Verdict(Box::new(v), None)
                    } else {
                        match profile.membership() {
                            Ok(m) => Cell::Verdict(Box::new(v), Some(m.is_member())),
                            Err(_) => Cell::Undecided,
                        }
                    }
                }
            };
            out.undecided |= matches!(cell, Cell::Undecided);
            out.cells.push(cell);
        }
    }

    for check in &plan.structural {
        for &k in &plan.ks {
            match evaluate_structural(&profile, check, k) {
                Ok(v) => out.structural.push((v.fired, v.claim_holds, v.r)),
                Err(TheoremError::UndecidedClass(_)) => {
                    out.undecided = true;
                    out.structural.push((false, true, Vec::new()));
                }
                Err(e) => return Err(e),
            }
        }
    }

    if plan.spec.lemmas {
        out.lemma_violations = lemma_checks(&profile)?;
    }

    let keep_record = match plan.mode {
        Mode::Sweep => plan.spec.emit_records,
        Mode::SearchOutsideG => {
            plan.spec.emit_records
                && out
                    .cells
                    .iter()
                    .any(|c| matches!(c, Cell::Verdict(v, Some(false)) if v.hypothesis_holds))
        }
    };
    if keep_record {
        let in_class = profile.in_class();
        out.record = Some(record(item, &out.encoding, &profile.summary, profile.kappa, profile.tau(), in_class));
    }
    Ok(())
}

struct Aggregator {
    report: Report,
}

impl Aggregator {
    fn new(plan: &Plan) -> Self {
        let mut conditions = Vec::new();
        for spec in &plan.conditions {
            for &k in &plan.ks {
                conditions.push(ConditionAggregate {
                    id: spec.id.to_owned(),
                    k,
                    evaluated: 0,
                    applicable: 0,
                    degree_ok: 0,
                    fired: 0,
                    consistent: 0,
                    boundary: 0,
                    unexplained_boundary: 0,
                    min_positive_margin: None,
                    undecided: 0,
                    in_class_skipped: 0,
                    vacuous: true,
                });
            }
        }
        let mut structural = Vec::new();
        for check in &plan.structural {
            for &k in &plan.ks {
                structural.push(StructuralAggregate {
                    id: check.id.to_owned(),
                    k,
                    fired: 0,
                    held: 0,
                });
            }
        }
        Self {
            report: Report {
                tool: ToolInfo {
                    name: env!("CARGO_PKG_NAME").to_owned(),
                    version: env!("CARGO_PKG_VERSION").to_owned(),
                },
                mode: plan.mode,
                seeds: plan.spec.seeds(),
                spec: plan.spec.clone(),
                generated_at_unix: std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map_or(0, |d| d.as_secs()),
                summary: Summary::default(),
                conditions,
                structural,
                counterexamples: Vec::new(),
                unexplained_boundaries: Vec::new(),
                structural_failures: Vec::new(),
                lemma_violations: Vec::new(),
                errors: Vec::new(),
                findings: Vec::new(),
                records: Vec::new(),
            },
        }
    }

    fn merge(&mut self, item: &CorpusItem, o: Outcome, mode: Mode) {
        let r = &mut self.report;
        r.summary.graphs_seen += 1;
        r.summary.graphs_undecided += u64::from(o.undecided);
        let issue = |what: String| Issue {
            source: item.source,
            index: item.index,
            graph: o.encoding.clone(),
            what,
        };
        if let Some(e) = &o.error {
            r.errors.push(issue(e.clone()));
            return;
        }
        if o.filtered {
            r.summary.graphs_filtered += 1;
            return;
        }
        if o.disconnected {
            r.summary.graphs_disconnected += 1;
        } else {
            r.summary.graphs_evaluated += 1;
        }
        if let Some(rec) = o.record {
            r.records.push(rec);
        }
        for (agg, cell) in r.conditions.iter_mut().zip(&o.cells) {
            agg.evaluated += 1;
            let (v, in_class) = match cell {
                Cell::Undecided => {
                    agg.undecided += 1;
                    continue;
                }
                Cell::Verdict(v, in_class) => (v, *in_class),
            };
            agg.applicable += u64::from(v.applicable);
            agg.degree_ok += u64::from(v.applicable && v.degree_ok);
            let (fired, boundary, consistent) = match mode {
                Mode::Sweep => (v.hypothesis_holds, v.is_boundary(), v.consistent),
                Mode::SearchOutsideG => {
                    if in_class == Some(true) {
                        agg.in_class_skipped += 1;
                    }
                    let outside = in_class == Some(false);
                    let fired = outside && v.hypothesis_holds;
                    (fired, outside && v.is_boundary(), !fired || v.conclusion_holds)
                }
            };
            agg.consistent += u64::from(consistent);
            if fired {
                agg.fired += 1;
                agg.vacuous = false;
                if let Some(m) = v.margin {
                    agg.min_positive_margin = Some(agg.min_positive_margin.map_or(m, |x: f64| x.min(m)));
                }
            }
            if boundary {
                agg.boundary += 1;
                if !v.conclusion_holds {
                    agg.unexplained_boundary += 1;
                }
            }
            match mode {
                Mode::Sweep => {
                    if !consistent {
                        r.counterexamples.push(VerdictReport::new(item, &o.encoding, v));
                    }
                    if boundary && !v.conclusion_holds {
                        r.unexplained_boundaries.push(VerdictReport::new(item, &o.encoding, v));
                    }
                }
                Mode::SearchOutsideG => {
                    if fired {
                        r.findings.push(VerdictReport::new(item, &o.encoding, v));
                    }
                }
            }
        }
        let checks = r.structural.len();
        for (i, (fired, held, profile)) in o.structural.into_iter().enumerate().take(checks) {
            let agg = &mut r.structural[i];
            if fired {
                agg.fired += 1;
                agg.held += u64::from(held);
                if !held {
                    r.structural_failures.push(StructuralFailure {
                        source: item.source,
                        index: item.index,
                        graph: o.encoding.clone(),
                        id: agg.id.clone(),
                        k: agg.k,
                        r: profile,
                    });
                }
            }
        }
        for lemma in o.lemma_violations {
            r.lemma_violations.push(issue(lemma.to_owned()));
        }
    }

    fn finish(mut self) -> Report {
        let r = &mut self.report;
        let s = &mut r.summary;
        s.counterexamples = r.counterexamples.len() as u64;
        s.unexplained_boundary = r.unexplained_boundaries.len() as u64;
        s.structural_failures = r.structural_failures.len() as u64;
        s.lemma_violations = r.lemma_violations.len() as u64;
        s.errors = r.errors.len() as u64;
        s.findings = r.findings.len() as u64;
        s.passed = s.counterexamples == 0
            && s.unexplained_boundary == 0
            && s.structural_failures == 0
            && s.lemma_violations == 0
            && s.errors == 0;
        self.report
    }
}

/// Runs a sweep on a pool of `threads` workers.
pub fn run(spec: &CorpusSpec, mode: Mode, threads: usize) -> Result<Report, SweepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let plan = Plan::new(spec, mode)?;
    let mut agg = Aggregator::new(&plan);
    let mut stream = corpus::stream(spec)?;
    loop {
        let chunk: Vec<CorpusItem> = stream.by_ref().take(CHUNK_SIZE).collect::<Result<_, _>>()?;
        if chunk.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> = pool.install(|| chunk.par_iter().map(|item| process(item, &plan)).collect());
        for (item, o) in chunk.iter().zip(outcomes) {
            agg.merge(item, o, mode);
        }
    }
    Ok(agg.finish())
}

/// Checks every condition in `spec` on every graph; the report passes when no
/// counterexample, unexplained boundary, structural failure, lemma violation
/// or evaluation error occurred.
pub fn run_sweep(spec: &CorpusSpec) -> Result<Report, SweepError> {
    run(spec, Mode::Sweep, threads_from_env()?)
}

/// Reports graphs outside the class whose degree and spectral hypotheses hold.
/// Conclusion failures are findings and do not fail the report.
pub fn search_outside_g(spec: &CorpusSpec) -> Result<Report, SweepError> {
    run(spec, Mode::SearchOutsideG, threads_from_env()?)
}

/// Evaluates a single graph against selected conditions (used by `certify`).
pub fn certify(g: &Multigraph, conditions: &[&'static ConditionSpec], k: u64) -> Result<Vec<ConditionVerdict>, TheoremError> {
    let profile = GraphProfile::new(g)?;
    conditions
        .iter()
        .map(|c| spectral_gate_core::theorems::evaluate_with(&profile, c, k, ClassMode::Required))
        .collect()
}
