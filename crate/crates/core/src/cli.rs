//! Command-line front end. Every command writes to the given sinks and
//! returns its process exit code.
//!
//! Exit codes: 0 ok, 1 invalid schedule, 2 input error, 3 internal
//! invariant breach.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::baseline::greedy_coloring_schedule;
use crate::metrics::{decimal2, MetricsReport};
use crate::psa::{run_psa_with, PairSearch, PsaTrace};
use crate::reference::{Benchmark, ReferenceRow};
use crate::schedule::ScheduleMatrix;
use crate::topology::Topology;
use crate::verify::{exact_min_frame_length, verify_schedule, DEFAULT_ORACLE_NODES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "psa", version, about = "TDMA broadcast scheduling for sensor networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a schedule for a topology and print it with its metrics.
    Schedule(ScheduleArgs),
    /// Check a schedule matrix against a topology.
    Verify(VerifyArgs),
    /// Metrics of a matrix file, or of a freshly built schedule.
    Metrics(MetricsArgs),
    /// Exact minimum frame length (small graphs only).
    Oracle(OracleArgs),
    /// Side-by-side table of computed and published results.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Algo {
    #[default]
    Psa,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub algo: Algo,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Include the three phase matrices (psa only).
    #[arg(long)]
    pub trace: bool,
    /// Try every frame pair before ending frame-length minimization.
    #[arg(long)]
    pub exhaustive_pairs: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub matrix: PathBuf,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Topology to schedule (ignored when --matrix is given).
    #[arg(short, long, required_unless_present = "matrix")]
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub algo: Algo,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub exhaustive_pairs: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ORACLE_NODES)]
    pub max_oracle_nodes: usize,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub exhaustive_pairs: bool,
    /// Attach published rows for this benchmark even if the topology is
    /// not a shipped fixture (bench15, bench30, bench40).
    #[arg(long)]
    pub benchmark: Option<String>,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Schedule(args) => cmd_schedule(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Metrics(args) => cmd_metrics(&args, out),
        Command::Oracle(args) => cmd_oracle(&args, out),
        Command::Compare(args) => cmd_compare(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_topology(path: &Path) -> Result<Topology, Failure> {
    Topology::parse(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<ScheduleMatrix, Failure> {
    ScheduleMatrix::parse(&read(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(format!("write failed: {e}")))
}

fn search(exhaustive: bool) -> PairSearch {
    if exhaustive {
        PairSearch::Exhaustive
    } else {
        PairSearch::TopTwo
    }
}

struct Built {
    matrix: ScheduleMatrix,
    trace: Option<PsaTrace>,
}

fn build(t: &Topology, algo: Algo, exhaustive: bool) -> Built {
    match algo {
        Algo::Psa => {
            let trace = run_psa_with(t, search(exhaustive));
            Built {
                matrix: trace.final_matrix.clone(),
                trace: Some(trace),
            }
        }
        Algo::Greedy => Built {
            matrix: greedy_coloring_schedule(t),
            trace: None,
        },
    }
}

/// Verifies a freshly built schedule; any defect is an internal error.
fn checked_metrics(t: &Topology, s: &ScheduleMatrix) -> Result<MetricsReport, Failure> {
    let report = verify_schedule(t, s).map_err(|e| Failure::internal(e.to_string()))?;
    if !report.valid {
        return Err(Failure::internal(format!(
            "produced an invalid schedule: {}",
            serde_json::to_string(&report).unwrap_or_default()
        )));
    }
    MetricsReport::compute(s).map_err(|e| Failure::internal(e.to_string()))
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Psa => "psa",
        Algo::Greedy => "greedy",
    }
}

fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn metrics_comment(report: &MetricsReport) -> String {
    report
        .to_text()
        .lines()
        .map(|l| format!("# {l}\n"))
        .collect()
}

fn cmd_schedule(args: &ScheduleArgs, out: &mut dyn Write) -> CmdResult {
    let t = load_topology(&args.input)?;
    let built = build(&t, args.algo, args.exhaustive_pairs);
    let report = checked_metrics(&t, &built.matrix)?;
    let trace = if args.trace { built.trace.as_ref() } else { None };

    let text = match args.format {
        Format::Json => {
            let matrix = built.matrix.to_json();
            let mut value = json!({
                "algorithm": algo_name(args.algo),
                "nodes": matrix.nodes,
                "frames": matrix.frames,
                "metrics": report.to_json(),
            });
            if let Some(tr) = trace {
                value["trace"] = serde_json::to_value(tr.to_json()).expect("serializable");
            }
            to_json_string(&value)
        }
        Format::Text => {
            let mut s = format!("# algorithm {}\n", algo_name(args.algo));
            match trace {
                Some(tr) => s.push_str(&tr.to_text()),
                None => s.push_str(&built.matrix.to_text()),
            }
            s.push_str(&metrics_comment(&report));
            s
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let t = load_topology(&args.input)?;
    let s = load_matrix(&args.matrix)?;
    let report = verify_schedule(&t, &s).map_err(|e| Failure::input(e.to_string()))?;
    emit(out, &to_json_string(&report))?;
    Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_metrics(args: &MetricsArgs, out: &mut dyn Write) -> CmdResult {
    let report = match (&args.matrix, &args.input) {
        (Some(path), _) => {
            let s = load_matrix(path)?;
            MetricsReport::compute(&s).map_err(|e| Failure::input(e.to_string()))?
        }
        (None, Some(path)) => {
            let t = load_topology(path)?;
            let built = build(&t, args.algo, args.exhaustive_pairs);
            checked_metrics(&t, &built.matrix)?
        }
        (None, None) => return Err(Failure::input("either --input or --matrix is required")),
    };
    let text = match args.format {
        Format::Json => to_json_string(&report.to_json()),
        Format::Text => report.to_text(),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> CmdResult {
    let t = load_topology(&args.input)?;
    let min = exact_min_frame_length(&t, args.max_oracle_nodes)
        .map_err(|e| Failure::input(e.to_string()))?;
    emit(out, &format!("{min}\n"))?;
    Ok(EXIT_OK)
}

/// One row of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub algorithm: String,
    pub provenance: &'static str,
    pub frame_length: Option<usize>,
    pub sigma: Option<usize>,
    pub tau: Option<String>,
    pub eta: Option<String>,
}

impl CompareRow {
    fn computed(algorithm: &str, report: &MetricsReport) -> Self {
        CompareRow {
            algorithm: algorithm.to_string(),
            provenance: "computed",
            frame_length: Some(report.frame_length),
            sigma: Some(report.throughput_sigma),
            tau: Some(decimal2(&report.average_delay_tau)),
            eta: Some(decimal2(&report.channel_utilization_eta)),
        }
    }

    fn published(r: &ReferenceRow) -> Self {
        CompareRow {
            algorithm: r.algorithm.to_string(),
            provenance: "published",
            frame_length: r.frame_length,
            sigma: r.sigma,
            tau: r.tau.map(str::to_string),
            eta: r.eta.map(str::to_string),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CompareTable {
    pub benchmark: Option<&'static str>,
    pub rows: Vec<CompareRow>,
}

/// Computed rows for psa and greedy, plus published rows when the topology
/// is a known benchmark.
pub fn compare_table(
    t: &Topology,
    search: PairSearch,
    benchmark: Option<Benchmark>,
) -> Result<CompareTable, String> {
    let mut rows = Vec::new();
    for (name, algo) in [("psa", Algo::Psa), ("greedy", Algo::Greedy)] {
        let built = build(t, algo, search == PairSearch::Exhaustive);
        let report = checked_metrics(t, &built.matrix).map_err(|f| f.message)?;
        rows.push(CompareRow::computed(name, &report));
    }
    let benchmark = benchmark.or_else(|| Benchmark::recognize(t));
    if let Some(b) = benchmark {
        rows.push(CompareRow::published(&b.published_psa()));
        rows.extend(b.reference_rows().iter().map(CompareRow::published));
    }
    Ok(CompareTable {
        benchmark: benchmark.map(Benchmark::name),
        rows,
    })
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl CompareTable {
    pub fn to_text(&self) -> String {
        let mut s = format!("# benchmark {}\n", self.benchmark.unwrap_or("-"));
        s.push_str(&format!(
            "{:<10} {:<9} {:>6} {:>6} {:>7} {:>7}\n",
            "algorithm", "source", "frames", "sigma", "tau", "eta"
        ));
        for r in &self.rows {
            s.push_str(&format!(
                "{:<10} {:<9} {:>6} {:>6} {:>7} {:>7}\n",
                r.algorithm,
                r.provenance,
                cell(&r.frame_length),
                cell(&r.sigma),
                cell(&r.tau),
                cell(&r.eta)
            ));
        }
        s
    }
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> CmdResult {
    let t = load_topology(&args.input)?;
    let benchmark = match &args.benchmark {
        Some(name) => Some(
            Benchmark::from_name(name)
                .ok_or_else(|| Failure::input(format!("unknown benchmark `{name}`")))?,
        ),
        None => None,
    };
    let table = compare_table(&t, search(args.exhaustive_pairs), benchmark)
        .map_err(Failure::internal)?;
    let text = match args.format {
        Format::Json => to_json_string(&table),
        Format::Text => table.to_text(),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}
