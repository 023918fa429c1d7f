//! Per-iteration cost simulation of a distributed solve.
//!
//! One solver iteration is modelled as an external phase (near-region work
//! on the owned mesh plus a shared FFT term), a redistribution stage, and the
//! internal phase in which every object's dense task runs on its processor
//! group. Strategies differ only in how those groups are chosen.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Object, Scenario, TaskSpec};
use crate::partition::{assign_task_lists, partition_external, redistribution_cost, CommCost, PartitionMap};
use crate::sched::{ideal_length, part_schedule, ScheduleResult};

/// How internal tasks are mapped onto processes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StrategyKind {
    /// Moldable scheduling restricted to approximate squares above the cutoff,
    /// rows matched to processes by mesh overlap.
    Proposed,
    /// Same as `Proposed` but with unrestricted processor counts.
    AnyPi,
    /// Each task runs on the processes that own its external partitions.
    NoRedistribution,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 3] =
        [StrategyKind::Proposed, StrategyKind::AnyPi, StrategyKind::NoRedistribution];

    pub fn as_str(&self) -> &'static str {
        match self {
            StrategyKind::Proposed => "proposed",
            StrategyKind::AnyPi => "any-pi",
            StrategyKind::NoRedistribution => "no-redist",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proposed" => Ok(StrategyKind::Proposed),
            "any-pi" => Ok(StrategyKind::AnyPi),
            "no-redist" => Ok(StrategyKind::NoRedistribution),
            other => Err(Error::InvalidScenario(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Timing summary of one simulated run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub p: usize,
    pub strategy: StrategyKind,
    pub t_gen: f64,
    pub t_matvec_avg: f64,
    pub t_iter_avg: f64,
    /// `iterations * t_iter_avg`.
    pub t_solve_total: f64,
    pub internal_makespan: f64,
    pub idle_fraction: f64,
    pub comm: CommCost,
    /// Internal schedule length in work units over the ideal length.
    pub c_max_norm: f64,
    /// Processor count each object's task ran on.
    pub task_procs: Vec<u32>,
}

/// Most nearly square factorization `p = r * c` with `r <= c`.
pub fn grid_factors(p: u32) -> (u32, u32) {
    assert!(p >= 1, "grid needs at least one process");
    let r = (1..=p.isqrt()).rev().find(|&r| p.is_multiple_of(r)).unwrap_or(1);
    (r, p / r)
}

/// Seconds for one dense task on its `P_i` processes.
///
/// Arithmetic scales as `W / P_i`; a parallel task also pays a
/// communication term proportional to the perimeter `r + c` of its process
/// grid.
pub fn dense_task_time(task: &TaskSpec, machine: &crate::model::MachineModel) -> f64 {
    assert!(task.procs >= 1, "task needs at least one process");
    let w = task.workload as f64;
    let compute = machine.t_work * w / task.procs as f64;
    if task.procs > 1 {
        let (r, c) = grid_factors(task.procs);
        compute + machine.gamma_grid * w.sqrt() * (r + c) as f64
    } else {
        compute
    }
}

/// Seconds for the external phase of one matrix-vector product.
pub fn external_phase_time(partition: &PartitionMap, machine: &crate::model::MachineModel) -> f64 {
    let g = machine.grid_points.max(1) as f64;
    machine.t_near * partition.max_load() as f64 + machine.t_fft * g * g.log2() / partition.procs() as f64
}

/// Internal phase when every task runs on the owners of its partitions.
///
/// All processes of a group start a task together, so a task waits until the
/// busiest member is free. Tasks are started greedily, earliest possible
/// start first (larger workload, then lower id on ties). Returns the
/// makespan and the mean idle fraction over all processes.
pub fn internal_makespan_no_redist(
    objects: &[Object],
    partition: &PartitionMap,
    machine: &crate::model::MachineModel,
) -> (f64, f64) {
    let groups: Vec<Vec<usize>> = (0..objects.len()).map(|i| partition.owners(i)).collect();
    let durations: Vec<f64> = objects
        .iter()
        .zip(&groups)
        .map(|(o, g)| {
            let task = TaskSpec::for_object(o).with_procs(g.len().max(1) as u32);
            dense_task_time(&task, machine)
        })
        .collect();
    group_list_schedule(objects, &groups, &durations, partition.procs())
}

fn group_list_schedule(objects: &[Object], groups: &[Vec<usize>], durations: &[f64], procs: usize) -> (f64, f64) {
    let mut free = vec![0.0f64; procs];
    let mut busy = vec![0.0f64; procs];
    let mut pending: Vec<usize> = (0..objects.len()).collect();
    let ready = |free: &[f64], g: &[usize]| g.iter().map(|&p| free[p]).fold(0.0, f64::max);

    while !pending.is_empty() {
        let (pos, &i) = pending
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                ready(&free, &groups[a])
                    .total_cmp(&ready(&free, &groups[b]))
                    .then(objects[b].edges.cmp(&objects[a].edges))
                    .then(a.cmp(&b))
            })
            .expect("pending is non-empty");
        let start = ready(&free, &groups[i]);
        for &p in &groups[i] {
            free[p] = start + durations[i];
            busy[p] += durations[i];
        }
        pending.swap_remove(pos);
    }

    let makespan = free.iter().copied().fold(0.0, f64::max);
    (makespan, idle_fraction(&busy, makespan))
}

fn idle_fraction(busy: &[f64], makespan: f64) -> f64 {
    if makespan <= 0.0 || busy.is_empty() {
        return 0.0;
    }
    let idle: f64 = busy.iter().map(|b| (1.0 - b / makespan).clamp(0.0, 1.0)).sum();
    idle / busy.len() as f64
}

/// Internal phase for a scheduled strategy: each schedule row runs its slots
/// back to back with real task costs. Parallel tasks lead their rows, so
/// their group members start them together.
fn scheduled_internal(result: &ScheduleResult, tasks: &[TaskSpec], machine: &crate::model::MachineModel) -> (f64, f64) {
    let molded = result.molded(tasks);
    let cost: Vec<f64> = molded.iter().map(|t| dense_task_time(t, machine)).collect();
    let busy: Vec<f64> = result
        .schedule
        .rows()
        .iter()
        .map(|row| row.iter().map(|&t| cost[t]).sum())
        .collect();
    let makespan = busy.iter().copied().fold(0.0, f64::max);
    (makespan, idle_fraction(&busy, makespan))
}

/// Simulates one solve of `scenario` on `procs` processes.
pub fn simulate(scenario: &Scenario, strategy: StrategyKind, procs: usize) -> Result<SimReport> {
    scenario.validate()?;
    if procs == 0 {
        return Err(Error::Shape("simulation needs at least one process".into()));
    }
    let machine = &scenario.machine;
    let tasks = scenario.tasks();
    let partition = partition_external(&scenario.objects, procs)?;
    let external = external_phase_time(&partition, machine);
    let near_gen = machine.t_near * partition.max_load() as f64;
    let ideal = ideal_length(&tasks, procs)?;

    let (internal, idle, comm, c_max_norm, task_procs) = match strategy {
        StrategyKind::Proposed | StrategyKind::AnyPi => {
            let cutoff = (strategy == StrategyKind::Proposed).then_some(scenario.cutoff);
            let result = part_schedule(&tasks, procs, cutoff)?;
            let molded = result.molded(&tasks);
            result.schedule.validate(&molded)?;
            let assignment = assign_task_lists(&result.schedule, &molded, &partition)?;
            let comm = redistribution_cost(&assignment, &result.schedule, &molded, &partition, machine)?;
            let (internal, idle) = scheduled_internal(&result, &tasks, machine);
            let norm = if ideal.is_zero() { 1.0 } else { result.c_max.ratio_to(&ideal) };
            (internal, idle, comm, norm, result.procs_per_task)
        }
        StrategyKind::NoRedistribution => {
            let (internal, idle) = internal_makespan_no_redist(&scenario.objects, &partition, machine);
            let units = crate::model::MachineModel {
                t_work: 1.0,
                gamma_grid: 0.0,
                ..*machine
            };
            let (work_makespan, _) = internal_makespan_no_redist(&scenario.objects, &partition, &units);
            let norm = if ideal.is_zero() { 1.0 } else { work_makespan / ideal.to_f64() };
            let task_procs = (0..scenario.objects.len())
                .map(|i| partition.partition_count(i).max(1) as u32)
                .collect();
            (internal, idle, CommCost::default(), norm, task_procs)
        }
    };

    let t_matvec_avg = external + comm.seconds + internal;
    Ok(SimReport {
        p: procs,
        strategy,
        t_gen: near_gen + internal,
        t_matvec_avg,
        t_iter_avg: t_matvec_avg,
        t_solve_total: t_matvec_avg * scenario.iterations as f64,
        internal_makespan: internal,
        idle_fraction: idle,
        comm,
        c_max_norm,
        task_procs,
    })
}
