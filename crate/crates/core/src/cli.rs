//! The `pivotlab` command line.
//!
//! Exit codes: 0 success, 1 error, 2 usage, 3 a verification or experiment
//! verdict failed, 4 a pivot run detected a cycle, 5 a pivot run hit its
//! step limit.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cube::Vertex;
use crate::error::{Error, Result};
use crate::exact::format_rational;
use crate::experiments::{parse_n_list, run_experiment, Config};
use crate::gen::{generate, Family, GenSpec, Generated, PStrategy, DEFAULT_RANGE};
use crate::lcp::LcpInstance;
use crate::pivot::{parse_permutation, run, Limits, PivotRule, RuleKind, Status};
use crate::uso::{tabulate, MorrisOracle, Orientation, PlcpOracle, UsoTable};
use crate::verify::{Check, Verdict, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERDICT_FAIL: i32 = 3;
pub const EXIT_CYCLE: i32 = 4;
pub const EXIT_STEP_LIMIT: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "pivotlab", version, about = "Principal pivoting on P-matrix LCPs and unique-sink orientations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a pivot rule from a start vertex.
    Solve(SolveArgs),
    /// Check properties of a tabulated orientation.
    Verify(VerifyArgs),
    /// Write a generated instance (JSON) or orientation table.
    Gen(GenArgs),
    /// Write the orientation table of an instance.
    Export(ExportArgs),
    /// Run a named experiment and write its result table.
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug)]
struct Source {
    /// Instance JSON file.
    #[arg(long, conflicts_with_all = ["uso", "family"])]
    instance: Option<PathBuf>,
    /// Orientation table file.
    #[arg(long, conflicts_with = "family")]
    uso: Option<PathBuf>,
    /// Builtin family: morris, random-k, random-p, uniform, random-orientation.
    #[arg(long)]
    family: Option<Family>,
    /// Dimension for --family.
    #[arg(long)]
    n: Option<usize>,
    /// Entry magnitude for random families.
    #[arg(long, default_value_t = DEFAULT_RANGE)]
    range: i64,
    /// P-matrix construction for random-p: gram or k-ppt.
    #[arg(long, default_value = "k-ppt")]
    strategy: PStrategy,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "murty")]
    rule: RuleKind,
    /// Permutation for murty-pi, e.g. 3,1,2.
    #[arg(long)]
    pi: Option<String>,
    /// Start vertex as a bitstring; defaults to all zeros.
    #[arg(long)]
    start: Option<Vertex>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Write the trace CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Comma-separated checks; defaults to all.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<Check>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report JSON here as well as to stdout.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// thm-id, thm-general, k-bound, random-edge or greedy-cycle.
    #[arg(long)]
    name: String,
    /// Dimensions, e.g. 3,5,...,25.
    #[arg(long)]
    n: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step limit for deterministic runs.
    #[arg(long)]
    max_steps: Option<u64>,
    /// RandomEdge trials per dimension.
    #[arg(long)]
    trials: Option<usize>,
    /// Sampled (π, start) pairs per dimension for thm-general.
    #[arg(long)]
    samples: Option<usize>,
    /// K-instances per dimension for k-bound.
    #[arg(long)]
    instances: Option<usize>,
    /// Result CSV; printed to stdout when absent.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Summary JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

enum Loaded {
    Instance {
        inst: LcpInstance,
        morris: bool,
    },
    Table(UsoTable),
}

impl Loaded {
    fn oracle(&self) -> Result<Box<dyn Orientation + '_>> {
        Ok(match self {
            Loaded::Instance { inst, morris: true } => Box::new(MorrisOracle::new(inst.n())?),
            Loaded::Instance { inst, .. } => Box::new(PlcpOracle::new(inst.clone())),
            Loaded::Table(t) => Box::new(t),
        })
    }

    fn table(&self) -> Result<UsoTable> {
        match self {
            Loaded::Table(t) => Ok(t.clone()),
            _ => tabulate(&self.oracle()?),
        }
    }
}

struct Usage(String);

enum Failure {
    Usage(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn load(src: &Source, seed: u64) -> CliResult<Loaded> {
    if let Some(p) = &src.instance {
        return Ok(Loaded::Instance {
            inst: LcpInstance::read(p)?,
            morris: false,
        });
    }
    if let Some(p) = &src.uso {
        return Ok(Loaded::Table(UsoTable::read(p)?));
    }
    let Some(family) = src.family else {
        return Err(Usage("one of --instance, --uso or --family is required".into()).into());
    };
    let Some(n) = src.n else {
        return Err(Usage(format!("--family {family} needs --n")).into());
    };
    let spec = GenSpec {
        range: src.range,
        strategy: src.strategy,
        ..GenSpec::new(family, n, seed)
    };
    Ok(match generate(&spec)? {
        Generated::Instance(inst) => Loaded::Instance {
            inst,
            morris: family == Family::Morris,
        },
        Generated::Table(t) => Loaded::Table(t),
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn solve(a: SolveArgs) -> CliResult<i32> {
    let pi = a
        .pi
        .as_deref()
        .map(parse_permutation)
        .transpose()
        .map_err(|e| Usage(e.to_string()))?;
    let rule = PivotRule::new(a.rule, pi, a.seed).map_err(|e| Usage(e.to_string()))?;
    let loaded = load(&a.source, a.seed)?;
    let oracle = loaded.oracle()?;
    let n = oracle.dim();
    let start = match a.start {
        Some(s) => s,
        None => Vertex::zero(n)?,
    };
    let limits = a.max_steps.map_or(Limits::default_for(n), Limits::steps);
    let trace = run(&oracle, &rule, start, limits)?;
    if let Some(p) = &a.trace {
        trace.write_csv(p)?;
    }
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "steps={}", trace.steps());
    if rule.kind().is_greedy() {
        let _ = writeln!(out, "flips={}", trace.flips());
    }
    let _ = writeln!(out, "status={}", trace.status);
    let _ = writeln!(out, "end={}", trace.end());
    if let Some(pi) = &trace.permutation {
        let s: Vec<String> = pi.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "pi={}", s.join(","));
    }
    if trace.status == Status::SinkReached {
        if let Loaded::Instance { inst, .. } = &loaded {
            let sol = inst.extract_solution(trace.end().ones_set())?;
            let fmt = |v: &[crate::exact::Rational]| {
                v.iter().map(format_rational).collect::<Vec<_>>().join(",")
            };
            let _ = writeln!(out, "w={}", fmt(&sol.w));
            let _ = writeln!(out, "z={}", fmt(&sol.z));
        }
    }
    Ok(match trace.status {
        Status::SinkReached => EXIT_OK,
        Status::CycleDetected => EXIT_CYCLE,
        Status::StepLimit => EXIT_STEP_LIMIT,
    })
}

#[derive(Serialize)]
struct VerifyOutput {
    n: usize,
    verdict: Verdict,
    reports: Vec<VerifyReport>,
}

fn verify(a: VerifyArgs) -> CliResult<i32> {
    let table = load(&a.source, a.seed)?.table()?;
    let checks = if a.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        a.checks
    };
    let reports = checks
        .iter()
        .map(|c| c.run(&table))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if reports.iter().all(VerifyReport::passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let output = VerifyOutput {
        n: table.dim(),
        verdict,
        reports,
    };
    let mut text = serde_json::to_string_pretty(&output).map_err(Error::from)?;
    text.push('\n');
    if let Some(p) = &a.output {
        write_file(p, &text)?;
    }
    print!("{text}");
    Ok(match verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_VERDICT_FAIL,
    })
}

fn gen(a: GenArgs) -> CliResult<i32> {
    if a.source.instance.is_some() || a.source.uso.is_some() {
        return Err(Usage("gen takes --family, not --instance or --uso".into()).into());
    }
    match load(&a.source, a.seed)? {
        Loaded::Instance { inst, .. } => inst.write(&a.output)?,
        Loaded::Table(t) => t.write(&a.output)?,
    }
    Ok(EXIT_OK)
}

fn export(a: ExportArgs) -> CliResult<i32> {
    load(&a.source, a.seed)?.table()?.write(&a.output)?;
    Ok(EXIT_OK)
}

fn experiment(a: ExperimentArgs) -> CliResult<i32> {
    let ns = a.n.as_deref().map(parse_n_list).transpose()?;
    let d = Config::default();
    let cfg = Config {
        seed: a.seed,
        max_steps: a.max_steps,
        random_edge_trials: a.trials.unwrap_or(d.random_edge_trials),
        general_samples: a.samples.unwrap_or(d.general_samples),
        k_instances: a.instances.unwrap_or(d.k_instances),
        ..d
    };
    let result = run_experiment(&a.name, ns.as_deref(), &cfg)?;
    let csv = result.to_csv()?;
    match &a.output {
        Some(p) => write_file(p, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(p) = &a.json {
        result.write_json(p)?;
    }
    eprintln!(
        "{}: {} ({} cells, {} failed)",
        result.name,
        if result.passed() { "pass" } else { "fail" },
        result.cells.len(),
        result.failures().count()
    );
    Ok(if result.passed() {
        EXIT_OK
    } else {
        EXIT_VERDICT_FAIL
    })
}

fn report(e: &Error) {
    let mut msg = format!("error: {e}");
    let mut src = std::error::Error::source(e);
    while let Some(s) = src {
        let text = s.to_string();
        if !msg.contains(&text) {
            msg.push_str(&format!("\n  caused by: {text}"));
        }
        src = s.source();
    }
    eprintln!("{msg}");
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Gen(a) => gen(a),
        Command::Export(a) => export(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Error(e)) => {
            report(&e);
            EXIT_ERROR
        }
    }
}

pub fn main() -> i32 {
    run_cli(std::env::args_os())
}
