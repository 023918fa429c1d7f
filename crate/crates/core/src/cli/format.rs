//! Scenario files and CSV reports.
//!
//! A scenario file is one JSON document:
//!
//! ```text
//! {
//!   "name": "bus-5",
//!   "objects": [ { "id": 0, "edges": 7026 }, ... ],
//!   "machine": { "t_work": 1e-9, "t_near": 5e-7, "t_fft": 2e-9,
//!                "gamma_grid": 1e-9, "alpha_msg": 1e-5, "beta_edge": 1e-8 },
//!   "cutoff": 20,
//!   "iterations": 66,
//!   "grid": [500, 20, 8],
//!   "procs": [20]
//! }
//! ```
//!
//! Keys are emitted in this order, unknown keys are rejected, and the output
//! of [`scenario_to_json`] parses back to an identical document.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{MachineModel, Object, Scenario};
use crate::sim::SimReport;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    objects: Vec<Object>,
    machine: MachineFile,
    cutoff: u32,
    iterations: u32,
    grid: [u64; 3],
    procs: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineFile {
    t_work: f64,
    t_near: f64,
    t_fft: f64,
    gamma_grid: f64,
    alpha_msg: f64,
    beta_edge: f64,
}

/// Failure to read a scenario document; distinct from an invalid scenario.
#[derive(Debug, thiserror::Error)]
#[error("malformed scenario file: {0}")]
pub struct ParseError(#[from] serde_json::Error);

pub fn scenario_to_json(scenario: &Scenario) -> String {
    let m = &scenario.machine;
    let file = ScenarioFile {
        name: scenario.name.clone(),
        objects: scenario.objects.clone(),
        machine: MachineFile {
            t_work: m.t_work,
            t_near: m.t_near,
            t_fft: m.t_fft,
            gamma_grid: m.gamma_grid,
            alpha_msg: m.alpha_msg,
            beta_edge: m.beta_edge,
        },
        cutoff: scenario.cutoff,
        iterations: scenario.iterations,
        grid: scenario.grid,
        procs: scenario.procs_list.clone(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("scenario serializes");
    out.push('\n');
    out
}

/// Parses and validates a scenario document.
pub fn scenario_from_json(text: &str) -> Result<Result<Scenario>, ParseError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    let m = file.machine;
    let machine = MachineModel {
        t_work: m.t_work,
        t_near: m.t_near,
        t_fft: m.t_fft,
        gamma_grid: m.gamma_grid,
        alpha_msg: m.alpha_msg,
        beta_edge: m.beta_edge,
        grid_points: 1,
    }
    .with_grid(file.grid);
    let scenario = Scenario {
        name: file.name,
        objects: file.objects,
        procs_list: file.procs,
        iterations: file.iterations,
        machine,
        cutoff: file.cutoff,
        grid: file.grid,
    };
    Ok(scenario.validate().map(|()| scenario))
}

/// Column order of the sweep CSV.
pub const SWEEP_COLUMNS: [&str; 11] = [
    "P",
    "strategy",
    "t_gen",
    "t_matvec_avg",
    "t_iter_avg",
    "internal_makespan",
    "idle_fraction",
    "comm_edges",
    "comm_messages",
    "c_max_norm",
    "t_ref",
];

pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.9e}")
}

/// Sweep rows in (P, strategy) order with the ideal-slope reference
/// `t_ref(P) = t_matvec(P_min) * P_min / P` per strategy.
pub fn sweep_csv(reports: &[SimReport]) -> Result<String> {
    let mut sorted: Vec<&SimReport> = reports.iter().collect();
    sorted.sort_by_key(|r| (r.p, r.strategy));
    let p_min = sorted.first().map(|r| r.p).ok_or_else(|| Error::Shape("empty sweep".into()))?;

    let mut out = SWEEP_COLUMNS.join(",");
    out.push('\n');
    for r in &sorted {
        let base = sorted
            .iter()
            .find(|b| b.p == p_min && b.strategy == r.strategy)
            .map(|b| b.t_matvec_avg * p_min as f64 / r.p as f64);
        let t_ref = base.map(fmt_f64).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.p,
            r.strategy,
            fmt_f64(r.t_gen),
            fmt_f64(r.t_matvec_avg),
            fmt_f64(r.t_iter_avg),
            fmt_f64(r.internal_makespan),
            fmt_f64(r.idle_fraction),
            r.comm.edges_moved,
            r.comm.messages,
            fmt_f64(r.c_max_norm),
            t_ref,
        )
        .expect("writing to a string");
    }
    Ok(out)
}
