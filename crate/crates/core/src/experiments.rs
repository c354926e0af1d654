//! Iteration-count experiments with per-cell bounds and verdicts.
//!
//! Each experiment returns an [`ExperimentResult`]: a list of cells, each
//! holding an observed value, the bound it is held to and a verdict. The
//! experiment passes iff every cell does. Runs are seeded; per-trial seeds
//! are derived from the master seed with [`split_seed`], so results do not
//! depend on scheduling.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cube::{full_mask, CoordSet, Vertex};
use crate::error::{Error, Result};
use crate::gen::{gen_k_matrix, gen_q, split_seed, DEFAULT_RANGE};
use crate::lcp::LcpInstance;
use crate::pivot::{walk, Greedy, Limits, PivotRule, RuleKind, Status};
use crate::uso::{morris_instance, plcp_outmap, tabulate, MorrisOracle, Orientation, PlcpOracle};
use crate::verify::Verdict;

/// Largest Morris dimension whose visited vertices are cross-checked
/// against exact basis solves.
pub const SPOT_CHECK_LIMIT: usize = 9;

/// One in this many distinct visited vertices is cross-checked.
const SPOT_CHECK_STRIDE: usize = 50;

pub const NAMES: [&str; 5] = ["thm-id", "thm-general", "k-bound", "random-edge", "greedy-cycle"];

/// Tunable sizes. Defaults match the acceptance thresholds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// `thm-general` enumerates every `(π, start)` up to this `n`.
    pub general_exhaustive_up_to: usize,
    pub general_samples: usize,
    pub k_instances: usize,
    /// `k-bound` tries every start up to this `n`.
    pub k_exhaustive_up_to: usize,
    pub k_sampled_starts: usize,
    pub random_edge_trials: usize,
    pub random_edge_cap: u64,
    /// Level-1 frequencies are only judged for `L` values seen this often.
    pub level_one_min_samples: u64,
    /// Overrides the default step limit of deterministic runs.
    pub max_steps: Option<u64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            general_exhaustive_up_to: 5,
            general_samples: 1000,
            k_instances: 100,
            k_exhaustive_up_to: 6,
            k_sampled_starts: 100,
            random_edge_trials: 200,
            random_edge_cap: 10_000_000,
            level_one_min_samples: 100,
            max_steps: None,
        }
    }
}

impl Config {
    fn limits(&self, n: usize) -> Limits {
        match self.max_steps {
            Some(m) => Limits::steps(m),
            None => Limits::default_for(n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "relation", content = "value", rename_all = "kebab-case")]
pub enum Bound {
    /// Reported only.
    None,
    Eq(f64),
    Le(f64),
    Ge(f64),
    Gt(f64),
    /// `|observed - center| <= tol`.
    Within { center: f64, tol: f64 },
}

impl Bound {
    pub fn holds(&self, x: f64) -> bool {
        match *self {
            Bound::None => true,
            Bound::Eq(b) => x == b,
            Bound::Le(b) => x <= b,
            Bound::Ge(b) => x >= b,
            Bound::Gt(b) => x > b,
            Bound::Within { center, tol } => (x - center).abs() <= tol,
        }
    }
}

fn num(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else if x.is_finite() {
        format!("{x:.6}")
    } else {
        format!("{x}")
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bound::None => Ok(()),
            Bound::Eq(b) => write!(f, "={}", num(b)),
            Bound::Le(b) => write!(f, "<={}", num(b)),
            Bound::Ge(b) => write!(f, ">={}", num(b)),
            Bound::Gt(b) => write!(f, ">{}", num(b)),
            Bound::Within { center, tol } => write!(f, "{}+/-{}", num(center), num(tol)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub n: usize,
    pub parameter: String,
    pub observed: f64,
    pub bound: Bound,
    pub verdict: Verdict,
}

impl Cell {
    pub fn new(n: usize, parameter: impl Into<String>, observed: f64, bound: Bound) -> Self {
        let verdict = if bound.holds(observed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Cell {
            n,
            parameter: parameter.into(),
            observed,
            bound,
            verdict,
        }
    }

    pub fn data(n: usize, parameter: impl Into<String>, observed: f64) -> Self {
        Cell::new(n, parameter, observed, Bound::None)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub name: String,
    pub seed: u64,
    pub cells: Vec<Cell>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct Summary<'a> {
    experiment: &'a str,
    seed: u64,
    verdict: Verdict,
    cells: usize,
    failed: usize,
    failures: Vec<&'a Cell>,
    notes: &'a [String],
}

impl ExperimentResult {
    fn new(name: &str, seed: u64, cells: Vec<Cell>, notes: Vec<String>) -> Self {
        let verdict = if cells.iter().all(Cell::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        ExperimentResult {
            name: name.to_owned(),
            seed,
            cells,
            verdict,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.passed())
    }

    /// Cells of dimension `n` whose parameter starts with `prefix`.
    pub fn find<'a>(&'a self, n: usize, prefix: &'a str) -> impl Iterator<Item = &'a Cell> {
        self.cells
            .iter()
            .filter(move |c| c.n == n && c.parameter.starts_with(prefix))
    }

    /// `experiment,n,parameter,observed,bound,verdict`.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(["experiment", "n", "parameter", "observed", "bound", "verdict"])?;
        for c in &self.cells {
            let verdict = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            };
            out.write_record([
                self.name.clone(),
                c.n.to_string(),
                c.parameter.clone(),
                num(c.observed),
                c.bound.to_string(),
                verdict.to_owned(),
            ])?;
        }
        let bytes = out
            .into_inner()
            .map_err(|e| Error::io("<csv>", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn summary_json(&self) -> String {
        let summary = Summary {
            experiment: &self.name,
            seed: self.seed,
            verdict: self.verdict,
            cells: self.cells.len(),
            failed: self.failures().count(),
            failures: self.failures().collect(),
            notes: &self.notes,
        };
        let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()?).map_err(|e| Error::io(path, e))
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.summary_json()).map_err(|e| Error::io(path, e))
    }
}

/// Parses `"3,5,7"`, with `...` (or `…`) continuing the progression set by
/// the two preceding entries: `"3,5,...,25"`.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>> {
    let bad = |t: &str| Error::InvalidArgument(format!("bad dimension list entry '{t}' in '{s}'"));
    let tokens: Vec<&str> = s.split(',').map(str::trim).collect();
    let mut out: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        let t = tokens[k];
        if t == "..." || t == "…" {
            let (Some(&b), Some(&a)) = (out.last(), out.iter().rev().nth(1)) else {
                return Err(bad(t));
            };
            let end: usize = tokens
                .get(k + 1)
                .and_then(|e| e.parse().ok())
                .ok_or_else(|| bad(t))?;
            if b <= a || end < b {
                return Err(bad(t));
            }
            let step = b - a;
            let mut x = b + step;
            while x <= end {
                out.push(x);
                x += step;
            }
            if out.last() != Some(&end) {
                return Err(Error::InvalidArgument(format!(
                    "{end} is not on the progression {a},{b},... in '{s}'"
                )));
            }
            k += 2;
        } else {
            out.push(t.parse().map_err(|_| bad(t))?);
            k += 1;
        }
    }
    if out.is_empty() {
        return Err(bad(s));
    }
    Ok(out)
}

pub fn default_ns(name: &str) -> Result<Vec<usize>> {
    Ok(match name {
        "thm-id" => (3..=25).step_by(2).collect(),
        "thm-general" => (3..=15).step_by(2).collect(),
        "k-bound" => (2..=8).collect(),
        "random-edge" => vec![7, 9, 11, 13],
        "greedy-cycle" => vec![3],
        _ => return Err(unknown(name)),
    })
}

fn unknown(name: &str) -> Error {
    Error::InvalidArgument(format!(
        "unknown experiment '{name}' (expected one of {})",
        NAMES.join(", ")
    ))
}

/// Runs experiment `name` over `ns` (or its default dimensions).
pub fn run_experiment(name: &str, ns: Option<&[usize]>, cfg: &Config) -> Result<ExperimentResult> {
    let ns = match ns {
        Some(ns) => ns.to_vec(),
        None => default_ns(name)?,
    };
    match name {
        "thm-id" => exp_thm_id(&ns, cfg),
        "thm-general" => exp_thm_general(&ns, cfg),
        "k-bound" => exp_k_bound(&ns, cfg),
        "random-edge" => exp_random_edge(&ns, cfg),
        "greedy-cycle" => exp_greedy_cycle(cfg),
        _ => Err(unknown(name)),
    }
}

// ---------------------------------------------------------------------------
// Shared pieces

/// Compares the transducer with exact basis solves on one in
/// `SPOT_CHECK_STRIDE` of `visited` (at least one vertex).
fn spot_check(n: usize, visited: &BTreeSet<u64>) -> Result<Option<Cell>> {
    if n > SPOT_CHECK_LIMIT || visited.is_empty() {
        return Ok(None);
    }
    let inst = morris_instance(n)?;
    let oracle = MorrisOracle::new(n)?;
    let mut checked = 0;
    let mut mismatches = 0;
    for &m in visited.iter().step_by(SPOT_CHECK_STRIDE) {
        let v = Vertex::from_mask(n, m)?;
        checked += 1;
        if plcp_outmap(&inst, v)? != oracle.outmap(v)? {
            mismatches += 1;
        }
    }
    Ok(Some(Cell::new(
        n,
        format!("oracle-spot-check checked={checked}/{}", visited.len()),
        mismatches as f64,
        Bound::Eq(0.0),
    )))
}

/// `v^i`: ones at coordinates 2, 4, ..., 2i.
pub fn milestone(n: usize, i: usize) -> Result<Vertex> {
    let mask = (1..=i).fold(0u64, |m, j| m | 1 << (2 * j - 1));
    Vertex::from_mask(n, mask)
}

pub fn murty_bound_from_origin(n: usize) -> u64 {
    let n = n as u64;
    (n * n).div_ceil(2)
}

pub fn murty_pi_bound(n: usize) -> u64 {
    let n = n as u64;
    2 * n * n - (5 * n - 3) / 2
}

fn check_morris_n(n: usize) -> Result<()> {
    MorrisOracle::new(n).map(|_| ())
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("p[i+1] > p[i]");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

// ---------------------------------------------------------------------------
// Murty on Morris from the origin

pub fn exp_thm_id(ns: &[usize], cfg: &Config) -> Result<ExperimentResult> {
    let mut cells = Vec::new();
    let mut notes = Vec::new();
    for &n in ns {
        check_morris_n(n)?;
        let oracle = MorrisOracle::new(n)?;
        let mut path = Vec::new();
        let out = walk(
            &oracle,
            &PivotRule::murty(),
            Vertex::zero(n)?,
            cfg.limits(n),
            |s| path.push(s.vertex.mask()),
        )?;
        let expected = murty_bound_from_origin(n) as f64;
        let observed = if out.status == Status::SinkReached {
            out.steps as f64
        } else {
            notes.push(format!("n={n}: run ended with {}", out.status));
            f64::NAN
        };
        cells.push(Cell::new(n, "steps-from-origin", observed, Bound::Eq(expected)));

        let mut first: HashMap<u64, usize> = HashMap::new();
        for (k, &m) in path.iter().enumerate() {
            first.entry(m).or_insert(k);
        }
        let half = (n - 1) / 2;
        let pos: Vec<Option<usize>> = (0..=half)
            .map(|i| milestone(n, i).map(|v| first.get(&v.mask()).copied()))
            .collect::<Result<_>>()?;
        for i in 0..half {
            let seg = match (pos[i], pos[i + 1]) {
                (Some(a), Some(b)) if b > a => (b - a) as f64,
                _ => {
                    notes.push(format!("n={n}: milestones v{i}, v{} out of order", i + 1));
                    f64::NAN
                }
            };
            cells.push(Cell::new(
                n,
                format!("segment v{i}->v{}", i + 1),
                seg,
                Bound::Eq((4 * i + 3) as f64),
            ));
        }
        let last = match pos[half] {
            Some(a) if out.status == Status::SinkReached => (path.len() - 1 - a) as f64,
            _ => f64::NAN,
        };
        cells.push(Cell::new(
            n,
            format!("segment v{half}->sink"),
            last,
            Bound::Eq(n.div_ceil(2) as f64),
        ));
        cells.extend(spot_check(n, &path.iter().copied().collect())?);
    }
    Ok(ExperimentResult::new("thm-id", cfg.seed, cells, notes))
}

// ---------------------------------------------------------------------------
// Murty_π on Morris from any start

struct PiRun {
    steps: u64,
    terminated: bool,
    pi: Vec<usize>,
    start: Vertex,
    visited: Vec<u64>,
}

fn murty_pi_run(n: usize, pi: Vec<usize>, start: Vertex, limits: Limits) -> Result<PiRun> {
    let oracle = MorrisOracle::new(n)?;
    let mut visited = Vec::new();
    let keep = n <= SPOT_CHECK_LIMIT;
    let rule = PivotRule::murty_pi(pi.clone())?;
    let out = walk(&oracle, &rule, start, limits, |s| {
        if keep {
            visited.push(s.vertex.mask())
        }
    })?;
    Ok(PiRun {
        steps: out.steps,
        terminated: out.status == Status::SinkReached,
        pi,
        start,
        visited,
    })
}

pub fn exp_thm_general(ns: &[usize], cfg: &Config) -> Result<ExperimentResult> {
    let mut cells = Vec::new();
    let mut notes = Vec::new();
    for &n in ns {
        check_morris_n(n)?;
        let limits = cfg.limits(n);
        let exhaustive = n <= cfg.general_exhaustive_up_to;
        let jobs: Vec<(Vec<usize>, Vertex)> = if exhaustive {
            let starts: Vec<Vertex> = Vertex::all(n).collect();
            all_permutations(n)
                .into_iter()
                .flat_map(|pi| starts.iter().map(move |&s| (pi.clone(), s)))
                .collect()
        } else {
            let base = split_seed(cfg.seed, n as u64);
            (0..cfg.general_samples as u64)
                .map(|k| {
                    let mut r = ChaCha8Rng::seed_from_u64(split_seed(base, k));
                    let mut pi: Vec<usize> = (1..=n).collect();
                    pi.shuffle(&mut r);
                    let start = Vertex::from_mask(n, r.gen::<u64>() & full_mask(n))?;
                    Ok((pi, start))
                })
                .collect::<Result<_>>()?
        };
        let runs: Vec<PiRun> = jobs
            .into_par_iter()
            .map(|(pi, s)| murty_pi_run(n, pi, s, limits))
            .collect::<Result<_>>()?;

        let bound = murty_pi_bound(n) as f64;
        let worst = runs.iter().max_by_key(|r| r.steps).expect("at least one run");
        let stuck = runs.iter().filter(|r| !r.terminated).count();
        let mode = if exhaustive {
            format!("exhaustive runs={}", runs.len())
        } else {
            format!("sampled runs={}", runs.len())
        };
        cells.push(Cell::new(
            n,
            format!("max-steps {mode}"),
            worst.steps as f64,
            Bound::Le(bound),
        ));
        cells.push(Cell::new(n, "non-terminating-runs", stuck as f64, Bound::Eq(0.0)));
        notes.push(format!(
            "n={n}: longest run {} steps with pi={:?} from {}",
            worst.steps, worst.pi, worst.start
        ));

        let identity = murty_pi_run(n, (1..=n).collect(), Vertex::zero(n)?, limits)?;
        cells.push(Cell::new(
            n,
            "identity-from-origin",
            identity.steps as f64,
            Bound::Le(murty_bound_from_origin(n) as f64),
        ));
        let visited: BTreeSet<u64> = runs.iter().flat_map(|r| r.visited.iter().copied()).collect();
        cells.extend(spot_check(n, &visited)?);
    }
    Ok(ExperimentResult::new("thm-general", cfg.seed, cells, notes))
}

// ---------------------------------------------------------------------------
// K-matrix instances

/// Pivot rules exercised by `k-bound`, with seeds for the randomized ones.
pub fn all_rules(n: usize, seed: u64) -> Result<Vec<PivotRule>> {
    let mut rev: Vec<usize> = (1..=n).collect();
    rev.reverse();
    Ok(vec![
        PivotRule::murty(),
        PivotRule::murty_pi(rev)?,
        PivotRule::randomized_murty(split_seed(seed, 0)),
        PivotRule::random_edge(split_seed(seed, 1)),
        PivotRule::greedy(Greedy::Antipodal),
        PivotRule::greedy(Greedy::SubcubeSink),
    ])
}

/// The `k`-th seeded K-instance of dimension `n` and the pivot set used
/// for its transformed companion.
pub fn k_instance(n: usize, seed: u64, k: u64) -> Result<(LcpInstance, CoordSet)> {
    let s = split_seed(split_seed(seed, 1000 + n as u64), k);
    let m = gen_k_matrix(n, s, DEFAULT_RANGE)?;
    let q = gen_q(&m, split_seed(s, 1), DEFAULT_RANGE)?;
    let mut r = ChaCha8Rng::seed_from_u64(split_seed(s, 2));
    let alpha = CoordSet::from_mask(r.gen::<u64>() & full_mask(n));
    Ok((LcpInstance::new(m, q)?, alpha))
}

#[derive(Clone, Copy, Default)]
struct KStats {
    /// Largest `|flips - Hamming(origin, sink)|` from the origin.
    origin_deviation: u64,
    /// Largest flip count over all starts.
    max_flips: u64,
    unfinished: u64,
}

impl KStats {
    fn merge(mut self, o: KStats) -> KStats {
        self.origin_deviation = self.origin_deviation.max(o.origin_deviation);
        self.max_flips = self.max_flips.max(o.max_flips);
        self.unfinished += o.unfinished;
        self
    }
}

/// Runs every rule on the orientation of `inst`. `origin` is the start
/// from which runs must be monotone.
fn k_runs<O: Orientation>(
    o: &O,
    origin: Vertex,
    starts: &[Vertex],
    seed: u64,
    limits: Limits,
) -> Result<Vec<KStats>> {
    let n = o.dim();
    let table = tabulate(o)?;
    let sinks = table.sinks();
    let [sink] = sinks.as_slice() else {
        return Err(Error::Dependency(format!(
            "K-instance orientation has {} sinks",
            sinks.len()
        )));
    };
    all_rules(n, seed)?
        .iter()
        .map(|rule| {
            let mut st = KStats::default();
            let out = walk(&table, rule, origin, limits, |_| {})?;
            if out.status == Status::SinkReached {
                st.origin_deviation = out.flips.abs_diff(origin.hamming(sink) as u64);
            } else {
                st.unfinished += 1;
            }
            for &s in starts {
                let out = walk(&table, rule, s, limits, |_| {})?;
                if out.status == Status::SinkReached {
                    st.max_flips = st.max_flips.max(out.flips);
                } else {
                    st.unfinished += 1;
                }
            }
            Ok(st)
        })
        .collect()
}

/// For every K-instance, every rule runs from the origin (the vertex
/// `α` for the transformed companion) and from many starts. Step counts
/// are coordinate flips, which equals pivot steps for single-coordinate
/// rules.
pub fn exp_k_bound(ns: &[usize], cfg: &Config) -> Result<ExperimentResult> {
    let mut cells = Vec::new();
    let mut notes = Vec::new();
    for &n in ns {
        let limits = cfg.limits(n);
        let exhaustive = n <= cfg.k_exhaustive_up_to;
        let per_instance: Vec<[Vec<KStats>; 2]> = (0..cfg.k_instances as u64)
            .into_par_iter()
            .map(|k| {
                let (inst, alpha) = k_instance(n, cfg.seed, k)?;
                let starts: Vec<Vertex> = if exhaustive {
                    Vertex::all(n).collect()
                } else {
                    let mut r = ChaCha8Rng::seed_from_u64(split_seed(split_seed(cfg.seed, k), 3));
                    (0..cfg.k_sampled_starts)
                        .map(|_| Vertex::from_mask(n, r.gen::<u64>() & full_mask(n)))
                        .collect::<Result<_>>()?
                };
                let rule_seed = split_seed(cfg.seed ^ 0x6b, k);
                let ppt = inst.principal_pivot(alpha)?;
                let plain = k_runs(&PlcpOracle::new(inst), Vertex::zero(n)?, &starts, rule_seed, limits)?;
                let origin = Vertex::from_mask(n, alpha.mask())?;
                let moved = k_runs(&PlcpOracle::new(ppt), origin, &starts, rule_seed, limits)?;
                Ok([plain, moved])
            })
            .collect::<Result<_>>()?;

        let starts_label = if exhaustive {
            format!("all({})", 1u64 << n)
        } else {
            format!("sampled({})", cfg.k_sampled_starts)
        };
        for (v, variant) in ["k", "ppt"].iter().enumerate() {
            for (r, kind) in RuleKind::ALL.iter().enumerate() {
                let st = per_instance
                    .iter()
                    .map(|x| x[v][r])
                    .fold(KStats::default(), KStats::merge);
                let label = format!("{variant} rule={kind} instances={}", per_instance.len());
                cells.push(Cell::new(
                    n,
                    format!("{label} start=origin |flips-hamming|"),
                    st.origin_deviation as f64,
                    Bound::Eq(0.0),
                ));
                cells.push(Cell::new(
                    n,
                    format!("{label} start={starts_label} max-flips"),
                    st.max_flips as f64,
                    Bound::Le(2.0 * n as f64),
                ));
                cells.push(Cell::new(
                    n,
                    format!("{label} unfinished-runs"),
                    st.unfinished as f64,
                    Bound::Eq(0.0),
                ));
                if st.unfinished > 0 {
                    notes.push(format!("n={n} {variant} {kind}: {} unfinished runs", st.unfinished));
                }
            }
        }
    }
    Ok(ExperimentResult::new("k-bound", cfg.seed, cells, notes))
}

// ---------------------------------------------------------------------------
// RandomEdge on Morris

#[derive(Clone, Default)]
struct EdgeTrial {
    steps: u64,
    capped: bool,
    level_increases: u64,
    /// Per `L`: (level-1 visits, pivots at the unique (0,-) coordinate).
    level_one: Vec<(u64, u64)>,
    visited: Vec<u64>,
}

fn random_edge_trial(n: usize, seed: u64, cap: u64) -> Result<EdgeTrial> {
    let oracle = MorrisOracle::new(n)?;
    let mut t = EdgeTrial {
        level_one: vec![(0, 0); n + 1],
        ..EdgeTrial::default()
    };
    let keep = n <= SPOT_CHECK_LIMIT;
    let mut prev: Option<usize> = None;
    let out = walk(
        &oracle,
        &PivotRule::random_edge(seed),
        Vertex::zero(n)?,
        Limits::steps(cap),
        |s| {
            if prev.is_some_and(|p| s.level > p) {
                t.level_increases += 1;
            }
            prev = Some(s.level);
            if s.level == 1 && !s.chosen.is_empty() {
                let cell = &mut t.level_one[s.upper];
                cell.0 += 1;
                if s.chosen.mask() & s.vertex.mask() == 0 {
                    cell.1 += 1;
                }
            }
            if keep {
                t.visited.push(s.vertex.mask());
            }
        },
    )?;
    t.steps = out.steps;
    t.capped = out.status != Status::SinkReached;
    Ok(t)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

/// RandomEdge from the origin of Morris orientations. Step counts are
/// reported as data; the checked properties are level monotonicity, the
/// level-1 choice frequencies and growth of the mean.
pub fn exp_random_edge(ns: &[usize], cfg: &Config) -> Result<ExperimentResult> {
    let mut cells = Vec::new();
    let mut notes = Vec::new();
    let mut prev_mean: Option<(usize, f64)> = None;
    for &n in ns {
        check_morris_n(n)?;
        let base = split_seed(cfg.seed, 2000 + n as u64);
        let trials: Vec<EdgeTrial> = (0..cfg.random_edge_trials as u64)
            .into_par_iter()
            .map(|k| random_edge_trial(n, split_seed(base, k), cfg.random_edge_cap))
            .collect::<Result<_>>()?;

        let done: Vec<u64> = trials.iter().filter(|t| !t.capped).map(|t| t.steps).collect();
        let capped = trials.len() - done.len();
        let mean = done.iter().sum::<u64>() as f64 / done.len().max(1) as f64;
        let mut sorted = done.clone();
        sorted.sort_unstable();
        let median = sorted.get(sorted.len() / 2).map_or(f64::NAN, |&x| x as f64);
        let murty = murty_bound_from_origin(n) as f64;

        cells.push(Cell::data(n, format!("mean-steps trials={}", done.len()), mean));
        cells.push(Cell::data(n, "median-steps", median));
        cells.push(Cell::data(
            n,
            format!("capped-trials cap={}", cfg.random_edge_cap),
            capped as f64,
        ));
        cells.push(Cell::data(n, "murty-steps-from-origin", murty));
        cells.push(Cell::data(n, "reference ((n-1)/2)!", factorial((n - 1) / 2)));
        if n >= 11 {
            cells.push(Cell::new(n, "mean-steps vs murty", mean, Bound::Gt(murty)));
        }
        if let Some((pn, pm)) = prev_mean {
            cells.push(Cell::new(n, format!("mean-steps vs n={pn}"), mean, Bound::Gt(pm)));
        }
        prev_mean = Some((n, mean));

        let increases: u64 = trials.iter().map(|t| t.level_increases).sum();
        cells.push(Cell::new(n, "level-increases", increases as f64, Bound::Eq(0.0)));

        let mut level_one = vec![(0u64, 0u64); n + 1];
        for t in &trials {
            for (acc, x) in level_one.iter_mut().zip(&t.level_one) {
                acc.0 += x.0;
                acc.1 += x.1;
            }
        }
        let total: u64 = level_one.iter().map(|x| x.0).sum();
        cells.push(Cell::data(n, "level-one-steps", total as f64));
        for (l, &(count, hits)) in level_one.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let p = 1.0 / (l as f64 + 1.0);
            let freq = hits as f64 / count as f64;
            let label = format!("level-one L={l} samples={count}");
            if count >= cfg.level_one_min_samples {
                let se = (p * (1.0 - p) / count as f64).sqrt();
                cells.push(Cell::new(
                    n,
                    label,
                    freq,
                    Bound::Within {
                        center: p,
                        tol: 3.0 * se,
                    },
                ));
            } else {
                cells.push(Cell::data(n, label, freq));
            }
        }
        if capped > 0 {
            notes.push(format!("n={n}: {capped} trials hit the step cap"));
        }
        let visited: BTreeSet<u64> = trials.iter().flat_map(|t| t.visited.iter().copied()).collect();
        cells.extend(spot_check(n, &visited)?);
    }
    Ok(ExperimentResult::new("random-edge", cfg.seed, cells, notes))
}

// ---------------------------------------------------------------------------
// Greedy cycling

/// Antipodal greedy pivoting on the Morris 3-cube from every start.
pub fn exp_greedy_cycle(cfg: &Config) -> Result<ExperimentResult> {
    let n = 3;
    let oracle = MorrisOracle::new(n)?;
    let rule = PivotRule::greedy(Greedy::Antipodal);
    let mut cells = Vec::new();
    let mut cycling = 0;
    let mut weight_two_cycling = 0;
    let mut visited = BTreeSet::new();
    for s in Vertex::all(n) {
        let out = walk(&oracle, &rule, s, cfg.limits(n), |x| {
            visited.insert(x.vertex.mask());
        })?;
        cells.push(Cell::data(
            n,
            format!("start={s} status={}", out.status),
            out.steps as f64,
        ));
        if out.status == Status::CycleDetected {
            cycling += 1;
            if s.weight() == 2 {
                weight_two_cycling += 1;
            }
        }
        if s.mask() == 0 {
            let steps = if out.status == Status::SinkReached {
                out.steps as f64
            } else {
                f64::NAN
            };
            cells.push(Cell::new(n, "origin steps-to-sink", steps, Bound::Eq(1.0)));
        }
    }
    cells.push(Cell::new(n, "cycling-starts", cycling as f64, Bound::Ge(3.0)));
    cells.push(Cell::new(
        n,
        "weight-2 cycling-starts",
        weight_two_cycling as f64,
        Bound::Eq(3.0),
    ));
    cells.extend(spot_check(n, &visited)?);
    Ok(ExperimentResult::new("greedy-cycle", cfg.seed, cells, Vec::new()))
}
