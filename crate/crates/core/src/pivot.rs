//! Simple principal pivoting on an orientation oracle.
//!
//! A run starts at a vertex and repeatedly flips outgoing coordinates until
//! it reaches a vertex with an all-`+` outmap. Simple rules flip one
//! coordinate per step; the greedy variants flip a set.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cube::{submasks, CoordSet, Subcube, Vertex};
use crate::error::{Error, Result};
use crate::uso::{Orientation, Outmap, TABLE_LIMIT};
use crate::verify::{level, upper_minus_count};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    Murty,
    MurtyPi,
    RandomizedMurty,
    RandomEdge,
    GreedyAntipodal,
    GreedySubcubeSink,
}

impl RuleKind {
    pub const ALL: [RuleKind; 6] = [
        RuleKind::Murty,
        RuleKind::MurtyPi,
        RuleKind::RandomizedMurty,
        RuleKind::RandomEdge,
        RuleKind::GreedyAntipodal,
        RuleKind::GreedySubcubeSink,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Murty => "murty",
            RuleKind::MurtyPi => "murty-pi",
            RuleKind::RandomizedMurty => "randomized-murty",
            RuleKind::RandomEdge => "random-edge",
            RuleKind::GreedyAntipodal => "greedy-antipodal",
            RuleKind::GreedySubcubeSink => "greedy-subcube-sink",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, RuleKind::RandomizedMurty | RuleKind::RandomEdge)
    }

    pub fn is_greedy(self) -> bool {
        matches!(self, RuleKind::GreedyAntipodal | RuleKind::GreedySubcubeSink)
    }

    /// Whether a revisited vertex proves that the run never terminates.
    pub fn detects_cycles(self) -> bool {
        self != RuleKind::RandomEdge
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown pivot rule '{s}'")))
    }
}

/// Checks that `pi` lists each of `1..=pi.len()` exactly once.
pub fn validate_permutation(pi: &[usize]) -> Result<()> {
    let n = pi.len();
    let mut seen = vec![false; n + 1];
    for &p in pi {
        if p == 0 || p > n || seen[p] {
            return Err(Error::InvalidArgument(format!(
                "{pi:?} is not a permutation of 1..={n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Parses `"3,1,2"` as the permutation with `π(1) = 3, π(2) = 1, π(3) = 2`.
pub fn parse_permutation(s: &str) -> Result<Vec<usize>> {
    let pi = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad permutation entry '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    validate_permutation(&pi)?;
    Ok(pi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotRule {
    kind: RuleKind,
    pi: Option<Vec<usize>>,
    seed: u64,
}

impl PivotRule {
    /// `pi` is required for `murty-pi` and rejected for every other rule.
    pub fn new(kind: RuleKind, pi: Option<Vec<usize>>, seed: u64) -> Result<Self> {
        match (&pi, kind) {
            (Some(p), RuleKind::MurtyPi) => validate_permutation(p)?,
            (None, RuleKind::MurtyPi) => {
                return Err(Error::InvalidArgument(
                    "murty-pi needs a permutation".into(),
                ))
            }
            (Some(_), _) => {
                return Err(Error::InvalidArgument(format!(
                    "a permutation is only meaningful for murty-pi, not {kind}"
                )))
            }
            (None, _) => {}
        }
        Ok(PivotRule { kind, pi, seed })
    }

    pub fn murty() -> Self {
        PivotRule {
            kind: RuleKind::Murty,
            pi: None,
            seed: 0,
        }
    }

    pub fn murty_pi(pi: Vec<usize>) -> Result<Self> {
        PivotRule::new(RuleKind::MurtyPi, Some(pi), 0)
    }

    pub fn randomized_murty(seed: u64) -> Self {
        PivotRule {
            kind: RuleKind::RandomizedMurty,
            pi: None,
            seed,
        }
    }

    pub fn random_edge(seed: u64) -> Self {
        PivotRule {
            kind: RuleKind::RandomEdge,
            pi: None,
            seed,
        }
    }

    pub fn greedy(variant: Greedy) -> Self {
        PivotRule {
            kind: variant.kind(),
            pi: None,
            seed: 0,
        }
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn pi(&self) -> Option<&[usize]> {
        self.pi.as_deref()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl fmt::Display for PivotRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(pi) = &self.pi {
            let s: Vec<String> = pi.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", s.join(","))?;
        }
        if self.kind.is_randomized() {
            write!(f, "@{}", self.seed)?;
        }
        Ok(())
    }
}

/// Per-run state of a single-coordinate rule.
pub struct Chooser {
    kind: RuleKind,
    /// `order[j - 1] = π(j)`.
    order: Vec<usize>,
    rng: ChaCha8Rng,
}

impl Chooser {
    pub fn new(rule: &PivotRule, n: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(rule.seed);
        let order = match rule.kind {
            RuleKind::Murty | RuleKind::RandomEdge => (1..=n).collect(),
            RuleKind::MurtyPi => {
                let pi = rule.pi.clone().expect("validated on construction");
                if pi.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: pi.len(),
                    });
                }
                pi
            }
            RuleKind::RandomizedMurty => {
                let mut pi: Vec<usize> = (1..=n).collect();
                pi.shuffle(&mut rng);
                pi
            }
            RuleKind::GreedyAntipodal | RuleKind::GreedySubcubeSink => {
                return Err(Error::InvalidArgument(format!(
                    "{} flips coordinate sets, not single coordinates",
                    rule.kind
                )))
            }
        };
        Ok(Chooser {
            kind: rule.kind,
            order,
            rng,
        })
    }

    /// The permutation in effect (the drawn one for randomized-murty).
    pub fn permutation(&self) -> Option<&[usize]> {
        match self.kind {
            RuleKind::MurtyPi | RuleKind::RandomizedMurty => Some(&self.order),
            _ => None,
        }
    }

    /// Picks a coordinate of `out`, which must be nonempty.
    pub fn choose(&mut self, out: CoordSet) -> usize {
        assert!(!out.is_empty(), "choose called with no outgoing coordinate");
        match self.kind {
            RuleKind::RandomEdge => {
                let k = self.rng.gen_range(0..out.len());
                out.iter().nth(k).expect("k < |out|")
            }
            _ => *self
                .order
                .iter()
                .find(|&&c| out.contains(c))
                .expect("out within dimension"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Greedy {
    /// `v := v ⊕ O`.
    Antipodal,
    /// `v :=` sink of the subcube spanned at `v` by `O`.
    SubcubeSink,
}

impl Greedy {
    fn kind(self) -> RuleKind {
        match self {
            Greedy::Antipodal => RuleKind::GreedyAntipodal,
            Greedy::SubcubeSink => RuleKind::GreedySubcubeSink,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: u64,
}

impl Limits {
    pub fn default_for(n: usize) -> Self {
        let n = n.max(1) as u64;
        Limits {
            max_steps: 50 * n * n,
        }
    }

    pub fn steps(max_steps: u64) -> Self {
        Limits { max_steps }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    SinkReached,
    CycleDetected,
    StepLimit,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::SinkReached => "sink-reached",
            Status::CycleDetected => "cycle-detected",
            Status::StepLimit => "step-limit",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One visited vertex. `chosen` is empty on the terminal visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Visit {
    pub index: u64,
    pub vertex: Vertex,
    pub outmap: Outmap,
    pub chosen: CoordSet,
    pub level: usize,
    pub upper: usize,
}

impl Visit {
    fn new(index: u64, vertex: Vertex, outmap: Outmap, chosen: CoordSet) -> Self {
        Visit {
            index,
            vertex,
            outmap,
            chosen,
            level: level(vertex, outmap),
            upper: upper_minus_count(vertex, outmap),
        }
    }
}

/// Summary of a run without the per-step record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    /// Pivot steps taken.
    pub steps: u64,
    /// Coordinates flipped, summed over steps.
    pub flips: u64,
    pub end: Vertex,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunTrace {
    pub rule: String,
    /// The permutation actually used by murty-pi or randomized-murty.
    pub permutation: Option<Vec<usize>>,
    pub visits: Vec<Visit>,
    pub status: Status,
}

impl RunTrace {
    pub fn steps(&self) -> u64 {
        self.visits.len().saturating_sub(1) as u64
    }

    pub fn flips(&self) -> u64 {
        self.visits.iter().map(|s| s.chosen.len() as u64).sum()
    }

    pub fn start(&self) -> Vertex {
        self.visits[0].vertex
    }

    pub fn end(&self) -> Vertex {
        self.visits[self.visits.len() - 1].vertex
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.visits.iter().map(|s| s.vertex).collect()
    }

    pub fn outcome(&self) -> Outcome {
        Outcome {
            steps: self.steps(),
            flips: self.flips(),
            end: self.end(),
            status: self.status,
        }
    }

    /// `step,vertex,outmap,chosen,level,L,status`; chosen coordinates are
    /// `;`-separated and only the last row carries a status.
    pub fn write_csv_to<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["step", "vertex", "outmap", "chosen", "level", "L", "status"])?;
        let last = self.visits.len() - 1;
        for (k, s) in self.visits.iter().enumerate() {
            let chosen: Vec<String> = s.chosen.iter().map(|i| i.to_string()).collect();
            let status = if k == last { self.status.name() } else { "" };
            out.write_record([
                s.index.to_string(),
                s.vertex.to_string(),
                s.outmap.to_string(),
                chosen.join(";"),
                s.level.to_string(),
                s.upper.to_string(),
                status.to_owned(),
            ])?;
        }
        out.flush().map_err(|e| Error::io("<trace>", e))?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv_to(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()?).map_err(|e| Error::io(path, e))
    }
}

fn evaluate<O: Orientation + ?Sized>(o: &O, v: Vertex) -> Result<Outmap> {
    o.outmap(v).map_err(|e| match e {
        Error::Oracle { .. } => e,
        e => Error::Oracle {
            vertex: v,
            source: Box::new(e),
        },
    })
}

fn drive<O, N, F>(
    o: &O,
    start: Vertex,
    limits: Limits,
    detect_cycles: bool,
    mut next: N,
    mut observe: F,
) -> Result<Outcome>
where
    O: Orientation + ?Sized,
    N: FnMut(Vertex, Outmap) -> Result<CoordSet>,
    F: FnMut(&Visit),
{
    if start.dim() != o.dim() {
        return Err(Error::DimensionMismatch {
            expected: o.dim(),
            found: start.dim(),
        });
    }
    let mut visited = HashSet::new();
    if detect_cycles {
        visited.insert(start.mask());
    }
    let mut v = start;
    let mut steps = 0u64;
    let mut flips = 0u64;
    loop {
        let om = evaluate(o, v)?;
        let status = if om.is_sink() {
            Some(Status::SinkReached)
        } else if steps >= limits.max_steps {
            Some(Status::StepLimit)
        } else {
            None
        };
        if let Some(status) = status {
            observe(&Visit::new(steps, v, om, CoordSet::empty()));
            return Ok(Outcome {
                steps,
                flips,
                end: v,
                status,
            });
        }
        let chosen = next(v, om)?;
        observe(&Visit::new(steps, v, om, chosen));
        v = v.xor(chosen);
        steps += 1;
        flips += chosen.len() as u64;
        if detect_cycles && !visited.insert(v.mask()) {
            let om = evaluate(o, v)?;
            observe(&Visit::new(steps, v, om, CoordSet::empty()));
            return Ok(Outcome {
                steps,
                flips,
                end: v,
                status: Status::CycleDetected,
            });
        }
    }
}

/// The unique sink of the subcube at `v` spanned by `free`.
pub fn subcube_sink<O: Orientation + ?Sized>(o: &O, v: Vertex, free: CoordSet) -> Result<Vertex> {
    if free.len() > TABLE_LIMIT {
        return Err(Error::Capability {
            what: "subcube-sink greedy pivoting",
            dim: free.len(),
            limit: TABLE_LIMIT,
        });
    }
    let cube = Subcube::new(v, free)?;
    let mut sinks = Vec::new();
    for s in submasks(free.mask()) {
        let u = v.xor(CoordSet::from_mask(s));
        if evaluate(o, u)?.minus_mask() & free.mask() == 0 {
            sinks.push(u);
        }
    }
    match sinks.as_slice() {
        [s] => Ok(*s),
        _ => Err(Error::Dependency(format!(
            "subcube {cube} has {} sinks; not a unique-sink orientation",
            sinks.len()
        ))),
    }
}

/// Runs `rule` from `start`, reporting each visit to `observe` instead of
/// recording a trace.
pub fn walk<O, F>(
    o: &O,
    rule: &PivotRule,
    start: Vertex,
    limits: Limits,
    observe: F,
) -> Result<Outcome>
where
    O: Orientation + ?Sized,
    F: FnMut(&Visit),
{
    let detect = rule.kind.detects_cycles();
    match rule.kind {
        RuleKind::GreedyAntipodal => {
            drive(o, start, limits, detect, |_, om| Ok(om.outgoing()), observe)
        }
        RuleKind::GreedySubcubeSink => drive(
            o,
            start,
            limits,
            detect,
            |v, om| {
                let t = subcube_sink(o, v, om.outgoing())?;
                Ok(CoordSet::from_mask(v.mask() ^ t.mask()))
            },
            observe,
        ),
        _ => {
            let mut chooser = Chooser::new(rule, o.dim())?;
            drive(
                o,
                start,
                limits,
                detect,
                |_, om| CoordSet::singleton(chooser.choose(om.outgoing())),
                observe,
            )
        }
    }
}

/// Runs `rule` from `start` and records every visit.
pub fn run<O: Orientation + ?Sized>(
    o: &O,
    rule: &PivotRule,
    start: Vertex,
    limits: Limits,
) -> Result<RunTrace> {
    let permutation = match rule.kind {
        RuleKind::MurtyPi | RuleKind::RandomizedMurty => Chooser::new(rule, o.dim())?
            .permutation()
            .map(<[usize]>::to_vec),
        _ => None,
    };
    let mut visits = Vec::new();
    let outcome = walk(o, rule, start, limits, |s| visits.push(*s))?;
    Ok(RunTrace {
        rule: rule.to_string(),
        permutation,
        visits,
        status: outcome.status,
    })
}

pub fn run_greedy<O: Orientation + ?Sized>(
    o: &O,
    start: Vertex,
    variant: Greedy,
    limits: Limits,
) -> Result<RunTrace> {
    run(o, &PivotRule::greedy(variant), start, limits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    /// The first vertex to be visited twice.
    pub vertex: Vertex,
    /// Visit index of its first occurrence.
    pub first: u64,
    /// The vertices from the first occurrence up to the repeat, exclusive.
    pub vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// The first revisit in `trace`; `None` for traces that reach the sink.
pub fn detect_cycle(trace: &RunTrace) -> Option<Cycle> {
    if trace.status == Status::SinkReached {
        return None;
    }
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for (k, s) in trace.visits.iter().enumerate() {
        if let Some(&first) = seen.get(&s.vertex.mask()) {
            return Some(Cycle {
                vertex: s.vertex,
                first: first as u64,
                vertices: trace.visits[first..k].iter().map(|s| s.vertex).collect(),
            });
        }
        seen.insert(s.vertex.mask(), k);
    }
    None
}
