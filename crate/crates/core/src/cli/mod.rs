//! Command-line front end: `gen`, `schedule`, `simulate` and `sweep`.
//!
//! Exit codes: 0 success, 1 usage or bad parameters, 2 I/O or malformed
//! files, 3 a schedule invariant was violated.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::Error;
use crate::model::{Scenario, TaskSpec};
use crate::sched::{ideal_length, lpt_schedule, part_schedule, ScheduleResult};
use crate::scenarios;
use crate::sim::{simulate, SimReport, StrategyKind};
use format::{fmt_f64, scenario_from_json, scenario_to_json, sweep_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bemsched", version, about = "Moldable task scheduling and solver simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a scenario file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output path; standard output when omitted.
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Build an internal-problem schedule and print its metrics.
    Schedule(ScheduleArgs),
    /// Simulate one solve and print a timing report.
    Simulate(SimulateArgs),
    /// Simulate a range of processor counts and write CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// High-speed bus of identical conductor pairs.
    Bus {
        /// Number of conductor pairs.
        #[arg(long)]
        pairs: usize,
    },
    /// Split-ring resonator array.
    Srr {
        /// Resonators per size class, `full,half,quarter`.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        classes: Option<Vec<usize>>,
    },
    /// Fan-out interposer.
    Interposer,
    /// Random objects with uniform edge counts.
    Random {
        #[arg(long)]
        objects: usize,
        /// Inclusive range `lo:hi`.
        #[arg(long, value_parser = parse_edge_range)]
        edges: (u64, u64),
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScheduleStrategy {
    Proposed,
    AnyPi,
    /// Plain LPT with every task sequential.
    Lpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimStrategy {
    Proposed,
    AnyPi,
    NoRedist,
}

impl From<SimStrategy> for StrategyKind {
    fn from(s: SimStrategy) -> Self {
        match s {
            SimStrategy::Proposed => StrategyKind::Proposed,
            SimStrategy::AnyPi => StrategyKind::AnyPi,
            SimStrategy::NoRedist => StrategyKind::NoRedistribution,
        }
    }
}

#[derive(Debug, Args)]
struct ScheduleArgs {
    /// Scenario file.
    scenario: PathBuf,
    /// Number of processes.
    #[arg(long)]
    procs: usize,
    #[arg(long, value_enum, default_value_t = ScheduleStrategy::Proposed)]
    strategy: ScheduleStrategy,
    /// Processor count above which only approximate squares are used
    /// (defaults to the scenario's value, normally 20).
    #[arg(long)]
    cutoff: Option<u32>,
    /// Also write per-task rows to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Scenario file.
    scenario: PathBuf,
    /// Number of processes.
    #[arg(long)]
    procs: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [SimStrategy::Proposed, SimStrategy::AnyPi, SimStrategy::NoRedist])]
    strategy: Vec<SimStrategy>,
    #[arg(long)]
    cutoff: Option<u32>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Scenario file.
    scenario: PathBuf,
    /// `start:stop:step` (inclusive) or a single count; defaults to the
    /// scenario's processor list.
    #[arg(long, value_parser = parse_procs_spec)]
    procs: Option<ProcsSpec>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [SimStrategy::Proposed, SimStrategy::AnyPi, SimStrategy::NoRedist])]
    strategies: Vec<SimStrategy>,
    #[arg(long)]
    cutoff: Option<u32>,
    /// Output CSV; standard output when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct ProcsSpec(Vec<usize>);

fn parse_edge_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: u64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Parses `start:stop:step` (inclusive of `stop`) or a single count.
pub fn parse_procs(s: &str) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad number {t:?}: {e}"));
    let list: Vec<usize> = match parts.as_slice() {
        [one] => vec![num(one)?],
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step == 0 || start > stop {
                return Err(format!("invalid range {s:?}"));
            }
            (start..=stop).step_by(step).collect()
        }
        _ => return Err(format!("expected start:stop:step, got {s:?}")),
    };
    if list.contains(&0) {
        return Err("processor counts must be at least 1".into());
    }
    Ok(list)
}

fn parse_procs_spec(s: &str) -> Result<ProcsSpec, String> {
    parse_procs(s).map(ProcsSpec)
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidSchedule(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

pub fn read_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    match scenario_from_json(&text) {
        Ok(parsed) => Ok(parsed?),
        Err(e) => Err(CliError::io(path, e)),
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError { code: EXIT_IO, message: e.to_string() }),
    }
}

/// Builds a schedule and renders the text report plus per-task CSV rows.
pub fn schedule_report(
    scenario: &Scenario,
    procs: usize,
    strategy: &str,
    cutoff: Option<u32>,
) -> Result<(String, String), Error> {
    let tasks = scenario.tasks();
    let cutoff = cutoff.unwrap_or(scenario.cutoff);
    let result: ScheduleResult = match strategy {
        "proposed" => part_schedule(&tasks, procs, Some(cutoff))?,
        "any-pi" => part_schedule(&tasks, procs, None)?,
        "lpt" => lpt_schedule(&tasks, procs, None)?,
        other => return Err(Error::InvalidScenario(format!("unknown schedule strategy {other:?}"))),
    };
    let molded = result.molded(&tasks);
    result.schedule.validate(&molded)?;
    let ideal = ideal_length(&tasks, procs)?;
    let norm = if ideal.is_zero() { 1.0 } else { result.c_max.ratio_to(&ideal) };

    let mut text = String::new();
    let w = &mut text;
    let _ = writeln!(w, "scenario: {}", scenario.name);
    let _ = writeln!(w, "strategy: {strategy}");
    let _ = writeln!(w, "procs: {procs}");
    let _ = writeln!(w, "cutoff: {cutoff}");
    let _ = writeln!(w, "iterations: {}", result.iterations_taken);
    let _ = writeln!(w, "c_max: {}", result.c_max);
    let _ = writeln!(w, "c_ideal: {ideal}");
    let _ = writeln!(w, "normalized_length: {}", fmt_f64(norm));
    let _ = writeln!(w, "task_procs:");
    for (i, p) in result.procs_per_task.iter().enumerate() {
        let _ = writeln!(w, "  {i} {p}");
    }
    let _ = writeln!(w, "finish_times:");
    for (p, f) in result.schedule.finish_times().iter().enumerate() {
        let _ = writeln!(w, "  {p} {f}");
    }

    let mut csv = String::from("task,object,edges,workload,procs,duration,processors\n");
    for (i, (t, group)) in molded.iter().zip(result.schedule.proc_assignment()).enumerate() {
        let edges = scenario.objects[t.object_id].edges;
        let procs: Vec<String> = group.iter().map(usize::to_string).collect();
        let _ = writeln!(
            csv,
            "{i},{},{edges},{},{},{},{}",
            t.object_id,
            t.workload,
            t.procs,
            TaskSpec::duration(t),
            procs.join(";")
        );
    }
    Ok((text, csv))
}

/// Simulates every (P, strategy) cell and returns reports in sorted order.
pub fn run_sweep(scenario: &Scenario, procs: &[usize], strategies: &[StrategyKind]) -> Result<Vec<SimReport>, Error> {
    let mut cells: Vec<(usize, StrategyKind)> =
        procs.iter().flat_map(|&p| strategies.iter().map(move |&s| (p, s))).collect();
    cells.sort();
    cells.dedup();
    cells.par_iter().map(|&(p, s)| simulate(scenario, s, p)).collect()
}

fn report_text(r: &SimReport, iterations: u32) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "[{} P={}]", r.strategy, r.p);
    let _ = writeln!(s, "t_gen: {}", fmt_f64(r.t_gen));
    let _ = writeln!(s, "t_matvec_avg: {}", fmt_f64(r.t_matvec_avg));
    let _ = writeln!(s, "t_iter_avg: {}", fmt_f64(r.t_iter_avg));
    let _ = writeln!(s, "t_solve_total ({iterations} iterations): {}", fmt_f64(r.t_solve_total));
    let _ = writeln!(s, "internal_makespan: {}", fmt_f64(r.internal_makespan));
    let _ = writeln!(s, "idle_fraction: {}", fmt_f64(r.idle_fraction));
    let _ = writeln!(s, "comm_edges: {}", r.comm.edges_moved);
    let _ = writeln!(s, "comm_messages: {}", r.comm.messages);
    let _ = writeln!(s, "comm_seconds: {}", fmt_f64(r.comm.seconds));
    let _ = writeln!(s, "c_max_norm: {}", fmt_f64(r.c_max_norm));
    s
}

fn with_cutoff(mut scenario: Scenario, cutoff: Option<u32>) -> Result<Scenario, CliError> {
    if let Some(c) = cutoff {
        if c == 0 {
            return Err(CliError { code: EXIT_USAGE, message: "cutoff must be at least 1".into() });
        }
        scenario.cutoff = c;
    }
    Ok(scenario)
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { kind, out } => {
            let scenario = match kind {
                GenKind::Bus { pairs } => scenarios::gen_bus(pairs)?,
                GenKind::Srr { classes } => {
                    let classes = classes.map(|c| [c[0], c[1], c[2]]);
                    scenarios::gen_srr(classes)?
                }
                GenKind::Interposer => scenarios::gen_interposer(),
                GenKind::Random { objects, edges, seed } => scenarios::gen_random(objects, edges.0..=edges.1, seed)?,
            };
            emit(out.as_deref(), &scenario_to_json(&scenario), stdout)
        }
        Command::Schedule(args) => {
            let scenario = read_scenario(&args.scenario)?;
            let name = match args.strategy {
                ScheduleStrategy::Proposed => "proposed",
                ScheduleStrategy::AnyPi => "any-pi",
                ScheduleStrategy::Lpt => "lpt",
            };
            let (text, csv) = schedule_report(&scenario, args.procs, name, args.cutoff)?;
            if let Some(path) = &args.csv {
                fs::write(path, csv).map_err(|e| CliError::io(path, e))?;
            }
            emit(None, &text, stdout)
        }
        Command::Simulate(args) => {
            let scenario = with_cutoff(read_scenario(&args.scenario)?, args.cutoff)?;
            let strategies: Vec<StrategyKind> = args.strategy.iter().map(|&s| s.into()).collect();
            let reports = run_sweep(&scenario, &[args.procs], &strategies)?;
            let text: String = reports.iter().map(|r| report_text(r, scenario.iterations)).collect();
            emit(None, &text, stdout)
        }
        Command::Sweep(args) => {
            let scenario = with_cutoff(read_scenario(&args.scenario)?, args.cutoff)?;
            let procs = args.procs.map(|p| p.0).unwrap_or_else(|| scenario.procs_list.clone());
            if procs.is_empty() || args.strategies.is_empty() {
                return Err(CliError { code: EXIT_USAGE, message: "nothing to sweep".into() });
            }
            let strategies: Vec<StrategyKind> = args.strategies.iter().map(|&s| s.into()).collect();
            let reports = run_sweep(&scenario, &procs, &strategies)?;
            emit(args.out.as_deref(), &sweep_csv(&reports)?, stdout)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
