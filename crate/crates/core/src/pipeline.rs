//! Staged searches for complementary equienergetic pairs and for the line-graph class Ω.
//!
//! Every streamed graph goes through a float filter whose threshold is
//! widened by the Jacobi error bounds. Survivors get canonical keys, are
//! deduplicated, re-tested with certified 12-digit enclosures, and finally
//! compared at the requested precision. Results are sorted by canonical
//! key, so output never depends on stream order or worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canonical::{canonical_form, is_self_complementary, CanonicalKey};
use crate::dyadic::Dyadic;
use crate::energy::{compare_spectral, energy_f64, EnergyInterval, SpectralData, Verdict};
use crate::enumerate::{connected_graphs, read_graph6_stream, GraphStream, StreamError, MAX_BUILTIN_ORDER};
use crate::graph::Graph;
use crate::graph6::from_graph6;

/// Digits of the second, certified filter.
pub const STAGE_B_DIGITS: u32 = 12;

const CHUNK: usize = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Problem {
    #[serde(rename = "pairs")]
    ComplementPairs,
    #[serde(rename = "omega")]
    OmegaLineGraph,
}

impl Problem {
    pub fn as_str(self) -> &'static str {
        match self {
            Problem::ComplementPairs => "pairs",
            Problem::OmegaLineGraph => "omega",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Builtin,
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub problem: Problem,
    /// Required for built-in enumeration; for files, checked against the stream if set.
    pub order: Option<usize>,
    pub source: Source,
    pub stage_a_tol: f64,
    pub stage_b_tol: f64,
    pub certify_digits: u32,
    /// `None` uses the available parallelism.
    pub workers: Option<usize>,
    /// Record wall time in the stats; off by default so reports are reproducible byte for byte.
    pub record_timing: bool,
}

impl SearchConfig {
    pub fn new(problem: Problem, order: usize) -> Self {
        SearchConfig {
            problem,
            order: Some(order),
            source: Source::Builtin,
            stage_a_tol: 1e-5,
            stage_b_tol: 1e-12,
            certify_digits: 200,
            workers: None,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |msg: String| Err(PipelineError::InvalidConfig(msg));
        if self.certify_digits == 0 {
            return bad("certify digits must be at least 1".into());
        }
        if !(self.stage_a_tol.is_finite() && self.stage_b_tol.is_finite()) {
            return bad("tolerances must be finite".into());
        }
        if self.stage_a_tol <= self.stage_b_tol {
            return bad(format!("stage A tolerance {} must exceed stage B tolerance {}", self.stage_a_tol, self.stage_b_tol));
        }
        let floor_ok = Dyadic::from_f64(self.stage_b_tol)
            .is_some_and(|t| t.signum() > 0 && !t.at_most_pow10_neg(self.certify_digits));
        if !floor_ok {
            return bad(format!("stage B tolerance {} must exceed 10^-{}", self.stage_b_tol, self.certify_digits));
        }
        if self.workers == Some(0) {
            return bad("worker count must be positive".into());
        }
        match (&self.source, self.order) {
            (Source::Builtin, None) => bad("built-in enumeration needs an order".into()),
            (Source::Builtin, Some(n)) if !(1..=MAX_BUILTIN_ORDER).contains(&n) => {
                bad(format!("built-in enumeration supports orders 1..={MAX_BUILTIN_ORDER}, got {n}"))
            }
            _ => Ok(()),
        }
    }

    fn stream(&self) -> Result<GraphStream, PipelineError> {
        Ok(match &self.source {
            Source::Builtin => connected_graphs(self.order.expect("validated"))?,
            Source::File(path) => read_graph6_stream(path)?,
        })
    }

    fn pool(&self) -> Result<rayon::ThreadPool, PipelineError> {
        let workers = self.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| PipelineError::InvalidConfig(format!("cannot start workers: {e}")))
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error("stream has order {found}, configuration expects {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StageStats {
    pub scanned: usize,
    /// Disconnected graphs in the stream; their connected complements are tested instead.
    pub skipped_disconnected: usize,
    /// Ω only: graphs with fewer than two edges.
    pub skipped_few_edges: usize,
    pub capacity_skips: usize,
    /// Distinct candidates (unordered pairs, or Ω graphs) passing the float filter.
    pub stage_a: usize,
    pub stage_b: usize,
    pub certified: usize,
    pub self_complementary_excluded: usize,
    pub cospectral: usize,
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnergyReport {
    pub lo: String,
    pub hi: String,
    pub digits: u32,
}

impl From<&EnergyInterval> for EnergyReport {
    fn from(e: &EnergyInterval) -> Self {
        EnergyReport { lo: e.lo_decimal(), hi: e.hi_decimal(), digits: e.digits() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub g6_a: String,
    pub g6_b: String,
    pub energy: EnergyReport,
    pub energy_b: EnergyReport,
    pub cospectral: bool,
    pub charpoly_a: String,
    pub charpoly_b: String,
    pub verdict: Verdict,
    pub stage: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub g6: String,
    pub edges: usize,
    pub line_order: usize,
    pub energy: EnergyReport,
    pub energy_complement: EnergyReport,
    pub cospectral: bool,
    pub charpoly_a: String,
    pub charpoly_b: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigSummary {
    pub source: String,
    pub universe: String,
    pub stage_a_tol: f64,
    pub stage_b_tol: f64,
    pub stage_b_digits: u32,
    pub digits: u32,
    pub policy: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Results {
    Pairs(Vec<PairReport>),
    Members(Vec<OmegaReport>),
}

impl Results {
    pub fn len(&self) -> usize {
        match self {
            Results::Pairs(p) => p.len(),
            Results::Members(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A completed search, ready for emission.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub problem: Problem,
    pub order: Option<usize>,
    pub config: ConfigSummary,
    pub stats: StageStats,
    #[serde(flatten)]
    pub results: Results,
}

enum Screen<T> {
    Disconnected,
    FewEdges,
    Capacity,
    Rejected,
    Passed(T),
}

fn float_close(a: &Graph, b: &Graph, tol: f64) -> bool {
    let (ea, eb) = (energy_f64(a), energy_f64(b));
    (ea.estimate - eb.estimate).abs() < tol + ea.error_bound + eb.error_bound
}

/// Runs `screen` over the whole stream in parallel chunks.
fn scan<T: Send>(
    cfg: &SearchConfig,
    pool: &rayon::ThreadPool,
    stats: &mut StageStats,
    screen: impl Fn(&Graph) -> Screen<T> + Sync,
) -> Result<(Vec<T>, Option<usize>), PipelineError> {
    let mut stream = cfg.stream()?;
    let mut passed = Vec::new();
    loop {
        let chunk: Vec<Graph> = stream.by_ref().take(CHUNK).collect::<Result<_, _>>()?;
        if let (Some(expected), Some(g)) = (cfg.order, chunk.first()) {
            if g.order() != expected {
                return Err(PipelineError::OrderMismatch { expected, found: g.order() });
            }
        }
        if chunk.is_empty() {
            break;
        }
        stats.scanned += chunk.len();
        let screened: Vec<Screen<T>> = pool.install(|| chunk.par_iter().map(&screen).collect());
        for s in screened {
            match s {
                Screen::Disconnected => stats.skipped_disconnected += 1,
                Screen::FewEdges => stats.skipped_few_edges += 1,
                Screen::Capacity => stats.capacity_skips += 1,
                Screen::Rejected => {}
                Screen::Passed(t) => passed.push(t),
            }
        }
    }
    Ok((passed, stream.order().or(cfg.order)))
}

fn canonical_graph_of(key: &CanonicalKey) -> Graph {
    from_graph6(key.as_str()).expect("canonical keys are valid graph6")
}

fn stage_b_passes(a: &mut SpectralData, b: &mut SpectralData, tol: f64) -> bool {
    let ea = a.energy(STAGE_B_DIGITS);
    let eb = b.energy(STAGE_B_DIGITS);
    let tol = Dyadic::from_f64(tol).expect("validated tolerance");
    ea.distance(&eb) <= tol
}

fn pair_report(key_a: &CanonicalKey, key_b: &CanonicalKey, cfg: &SearchConfig) -> (bool, Option<PairReport>) {
    let mut a = SpectralData::of_graph(&canonical_graph_of(key_a));
    let mut b = SpectralData::of_graph(&canonical_graph_of(key_b));
    if !stage_b_passes(&mut a, &mut b, cfg.stage_b_tol) {
        return (false, None);
    }
    let cmp = compare_spectral(&mut a, &mut b, cfg.certify_digits);
    if cmp.verdict == Verdict::Distinct {
        return (true, None);
    }
    let report = PairReport {
        g6_a: key_a.to_string(),
        g6_b: key_b.to_string(),
        energy: (&cmp.a).into(),
        energy_b: (&cmp.b).into(),
        cospectral: cmp.cospectral,
        charpoly_a: a.poly().to_string(),
        charpoly_b: b.poly().to_string(),
        verdict: cmp.verdict,
        stage: "certified".into(),
    };
    (true, Some(report))
}

fn policy(problem: Problem) -> Vec<String> {
    let mut notes = vec![
        "only connected graphs are tested; a disconnected graph is covered by its connected complement".to_string(),
        "self-complementary candidates are excluded and counted".to_string(),
    ];
    if problem == Problem::OmegaLineGraph {
        notes.push("graphs with fewer than 2 edges are excluded".into());
        notes.push("graphs whose line graph is self-complementary are excluded".into());
        notes.push("members are connected representatives; adding isolated vertices leaves the line graph unchanged".into());
    }
    notes
}

fn summary(cfg: &SearchConfig) -> ConfigSummary {
    ConfigSummary {
        source: match &cfg.source {
            Source::Builtin => "builtin".into(),
            Source::File(p) => p.display().to_string(),
        },
        universe: "connected graphs".into(),
        stage_a_tol: cfg.stage_a_tol,
        stage_b_tol: cfg.stage_b_tol,
        stage_b_digits: STAGE_B_DIGITS,
        digits: cfg.certify_digits,
        policy: policy(cfg.problem),
    }
}

pub fn search_complement_pairs(cfg: &SearchConfig) -> Result<(Vec<PairReport>, StageStats), PipelineError> {
    Ok(search_pairs_inner(cfg)?.0)
}

/// Search results plus the stream's observed order.
type Inner<T> = Result<((Vec<T>, StageStats), Option<usize>), PipelineError>;

fn search_pairs_inner(cfg: &SearchConfig) -> Inner<PairReport> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = cfg.pool()?;
    let mut stats = StageStats::default();
    let (survivors, order) = scan(cfg, &pool, &mut stats, |g| {
        if g.order() >= 2 && !g.is_connected() {
            return Screen::Disconnected;
        }
        let h = g.complement();
        if !float_close(g, &h, cfg.stage_a_tol) {
            return Screen::Rejected;
        }
        let (ka, kb) = (canonical_form(g), canonical_form(&h));
        Screen::Passed(if ka <= kb { (ka, kb) } else { (kb, ka) })
    })?;
    let mut self_complementary = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for (a, b) in survivors {
        if a == b {
            self_complementary.insert(a);
        } else {
            pairs.insert((a, b));
        }
    }
    stats.self_complementary_excluded = self_complementary.len();
    stats.stage_a = pairs.len();
    let pairs: Vec<_> = pairs.into_iter().collect();
    let outcomes: Vec<(bool, Option<PairReport>)> =
        pool.install(|| pairs.par_iter().map(|(a, b)| pair_report(a, b, cfg)).collect());
    stats.stage_b = outcomes.iter().filter(|o| o.0).count();
    let reports: Vec<PairReport> = outcomes.into_iter().filter_map(|o| o.1).collect();
    stats.certified = reports.len();
    stats.cospectral = reports.iter().filter(|r| r.cospectral).count();
    if cfg.record_timing {
        stats.seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(((reports, stats), order))
}

fn omega_report(key: &CanonicalKey, cfg: &SearchConfig) -> (bool, Option<OmegaReport>) {
    let g = canonical_graph_of(key);
    let line = g.line_graph().expect("capacity checked during screening");
    let mut a = SpectralData::of_graph(&line);
    let mut b = SpectralData::of_graph(&line.complement());
    if !stage_b_passes(&mut a, &mut b, cfg.stage_b_tol) {
        return (false, None);
    }
    let cmp = compare_spectral(&mut a, &mut b, cfg.certify_digits);
    if cmp.verdict == Verdict::Distinct {
        return (true, None);
    }
    let report = OmegaReport {
        g6: key.to_string(),
        edges: g.size(),
        line_order: line.order(),
        energy: (&cmp.a).into(),
        energy_complement: (&cmp.b).into(),
        cospectral: cmp.cospectral,
        charpoly_a: a.poly().to_string(),
        charpoly_b: b.poly().to_string(),
        verdict: cmp.verdict,
    };
    (true, Some(report))
}

pub fn search_omega(cfg: &SearchConfig) -> Result<(Vec<OmegaReport>, StageStats), PipelineError> {
    Ok(search_omega_inner(cfg)?.0)
}

fn search_omega_inner(cfg: &SearchConfig) -> Inner<OmegaReport> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = cfg.pool()?;
    let mut stats = StageStats::default();
    let (survivors, order) = scan(cfg, &pool, &mut stats, |g| {
        if g.order() >= 2 && !g.is_connected() {
            return Screen::Disconnected;
        }
        if g.size() < 2 {
            return Screen::FewEdges;
        }
        let Ok(line) = g.line_graph() else {
            return Screen::Capacity;
        };
        if !float_close(&line, &line.complement(), cfg.stage_a_tol) {
            return Screen::Rejected;
        }
        Screen::Passed((canonical_form(g), is_self_complementary(&line)))
    })?;
    let mut members: BTreeMap<CanonicalKey, bool> = BTreeMap::new();
    for (key, sc) in survivors {
        members.insert(key, sc);
    }
    stats.self_complementary_excluded = members.values().filter(|&&sc| sc).count();
    let candidates: Vec<CanonicalKey> = members.into_iter().filter(|(_, sc)| !sc).map(|(k, _)| k).collect();
    stats.stage_a = candidates.len();
    let outcomes: Vec<(bool, Option<OmegaReport>)> =
        pool.install(|| candidates.par_iter().map(|k| omega_report(k, cfg)).collect());
    stats.stage_b = outcomes.iter().filter(|o| o.0).count();
    let reports: Vec<OmegaReport> = outcomes.into_iter().filter_map(|o| o.1).collect();
    stats.certified = reports.len();
    stats.cospectral = reports.iter().filter(|r| r.cospectral).count();
    if cfg.record_timing {
        stats.seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(((reports, stats), order))
}

/// Runs whichever search the configuration names.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome, PipelineError> {
    let (stats, results, order) = match cfg.problem {
        Problem::ComplementPairs => {
            let ((r, s), order) = search_pairs_inner(cfg)?;
            (s, Results::Pairs(r), order)
        }
        Problem::OmegaLineGraph => {
            let ((r, s), order) = search_omega_inner(cfg)?;
            (s, Results::Members(r), order)
        }
    };
    Ok(SearchOutcome { problem: cfg.problem, order, config: summary(cfg), stats, results })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json, csv or text)")),
        }
    }
}

fn to_csv(outcome: &SearchOutcome) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let result = match &outcome.results {
        Results::Pairs(pairs) => {
            let header = ["g6_a", "g6_b", "energy_lo", "energy_hi", "digits", "cospectral", "verdict", "charpoly_a", "charpoly_b"];
            w.write_record(header).and_then(|_| {
                pairs.iter().try_for_each(|p| {
                    w.write_record([
                        p.g6_a.as_str(),
                        &p.g6_b,
                        &p.energy.lo,
                        &p.energy.hi,
                        &p.energy.digits.to_string(),
                        &p.cospectral.to_string(),
                        p.verdict.as_str(),
                        &p.charpoly_a,
                        &p.charpoly_b,
                    ])
                })
            })
        }
        Results::Members(members) => {
            let header = [
                "g6",
                "line_order",
                "energy_lo",
                "energy_hi",
                "energy_complement_lo",
                "energy_complement_hi",
                "digits",
                "cospectral",
                "verdict",
                "charpoly_a",
                "charpoly_b",
            ];
            w.write_record(header).and_then(|_| {
                members.iter().try_for_each(|m| {
                    w.write_record([
                        m.g6.as_str(),
                        &m.line_order.to_string(),
                        &m.energy.lo,
                        &m.energy.hi,
                        &m.energy_complement.lo,
                        &m.energy_complement.hi,
                        &m.energy.digits.to_string(),
                        &m.cospectral.to_string(),
                        m.verdict.as_str(),
                        &m.charpoly_a,
                        &m.charpoly_b,
                    ])
                })
            })
        }
    };
    result.expect("writing to memory cannot fail");
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is UTF-8")
}

fn to_text(outcome: &SearchOutcome) -> String {
    let mut out = String::new();
    let s = &outcome.stats;
    let order = outcome.order.map_or("?".to_string(), |n| n.to_string());
    let _ = writeln!(out, "problem {} order {order} source {}", outcome.problem.as_str(), outcome.config.source);
    let _ = writeln!(
        out,
        "scanned {} stage-A {} stage-B {} certified {} self-complementary excluded {} cospectral {}",
        s.scanned, s.stage_a, s.stage_b, s.certified, s.self_complementary_excluded, s.cospectral
    );
    if let Some(secs) = s.seconds {
        let _ = writeln!(out, "seconds {secs:.3}");
    }
    match &outcome.results {
        Results::Pairs(pairs) => {
            for p in pairs {
                let _ = writeln!(out, "{} {} E ∈ [{}, {}] {}{}", p.g6_a, p.g6_b, p.energy.lo, p.energy.hi, p.verdict, if p.cospectral { " cospectral" } else { "" });
            }
        }
        Results::Members(members) => {
            for m in members {
                let _ = writeln!(out, "{} L order {} E ∈ [{}, {}] {}{}", m.g6, m.line_order, m.energy.lo, m.energy.hi, m.verdict, if m.cospectral { " cospectral" } else { "" });
            }
        }
    }
    out
}

pub fn render(outcome: &SearchOutcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(outcome).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(outcome),
        Format::Text => to_text(outcome),
    }
}

/// Writes the rendered report to `path`, or returns it when no path is given.
pub fn emit_report(outcome: &SearchOutcome, format: Format, path: Option<&Path>) -> Result<String, PipelineError> {
    let text = render(outcome, format);
    if let Some(path) = path {
        std::fs::write(path, &text).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })?;
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(problem: Problem, n: usize) -> SearchConfig {
        SearchConfig { certify_digits: 30, ..SearchConfig::new(problem, n) }
    }

    #[test]
    fn config_validation() {
        assert!(cfg(Problem::ComplementPairs, 5).validate().is_ok());
        let mut c = cfg(Problem::ComplementPairs, 5);
        c.stage_b_tol = 1e-4;
        assert!(c.validate().is_err());
        let mut c = cfg(Problem::ComplementPairs, 5);
        c.certify_digits = 10;
        assert!(c.validate().is_err());
        assert!(cfg(Problem::ComplementPairs, 11).validate().is_err());
        let mut c = cfg(Problem::ComplementPairs, 5);
        c.workers = Some(0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn c4_is_the_only_small_pair() {
        let (pairs, stats) = search_complement_pairs(&cfg(Problem::ComplementPairs, 4)).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(stats.scanned, 6);
        assert_eq!(stats.self_complementary_excluded, 1);
        assert!(pairs[0].energy.lo.starts_with("3.99") || pairs[0].energy.lo.starts_with("4.0"));
        for n in [1, 2, 3, 5] {
            assert!(search_complement_pairs(&cfg(Problem::ComplementPairs, n)).unwrap().0.is_empty(), "n = {n}");
        }
    }

    #[test]
    fn renders_every_format() {
        let outcome = run_search(&cfg(Problem::ComplementPairs, 4)).unwrap();
        let json: serde_json::Value = serde_json::from_str(&render(&outcome, Format::Json)).unwrap();
        assert_eq!(json["problem"], "pairs");
        assert_eq!(json["pairs"].as_array().unwrap().len(), 1);
        assert!(json["stats"]["seconds"].is_null());
        assert_eq!(render(&outcome, Format::Csv).lines().count(), 2);
        assert!(render(&outcome, Format::Text).contains("certified 1"));

        let empty = run_search(&cfg(Problem::ComplementPairs, 3)).unwrap();
        let json: serde_json::Value = serde_json::from_str(&render(&empty, Format::Json)).unwrap();
        assert_eq!(json["pairs"], serde_json::json!([]));
        assert_eq!(json["stats"]["scanned"], 2);
    }

    #[test]
    fn omega_order_five() {
        let (members, stats) = search_omega(&cfg(Problem::OmegaLineGraph, 5)).unwrap();
        assert_eq!(members.len(), 1, "{stats:?}");
        assert_eq!(members[0].line_order, 6);
    }
}
