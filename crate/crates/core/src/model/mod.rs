//! Domain types shared by the scheduler, partitioner and simulator.
//!
//! Everything here is a plain value type. The scheduler works in exact work
//! units ([`Span`]); only the simulator converts to seconds through a
//! [`MachineModel`].

mod schedule;
mod span;

pub use crate::partition::PartitionMap;
pub use schedule::Schedule;
pub use span::Span;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default threshold below which processor counts grow one at a time.
pub const DEFAULT_CUTOFF: u32 = 20;

/// A conductor surface, reduced to its mesh edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Object {
    pub id: usize,
    pub edges: u64,
}

impl Object {
    pub fn new(id: usize, edges: u64) -> Self {
        Object { id, edges }
    }
}

/// Workload of an internal problem with `edges` unknowns: `edges²`.
pub fn estimate_workload(edges: u64) -> u128 {
    let e = edges as u128;
    e * e
}

/// One internal-problem task: the dense work of a single object, run on
/// `procs` processors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaskSpec {
    pub object_id: usize,
    pub workload: u128,
    pub procs: u32,
}

impl TaskSpec {
    /// Sequential task for `object`.
    pub fn for_object(object: &Object) -> Self {
        TaskSpec {
            object_id: object.id,
            workload: estimate_workload(object.edges),
            procs: 1,
        }
    }

    pub fn with_procs(self, procs: u32) -> Self {
        TaskSpec { procs, ..self }
    }

    pub fn is_parallel(&self) -> bool {
        self.procs > 1
    }

    /// `workload / procs`. Panics on a zero processor count; use
    /// [`task_duration`] for the checked form.
    pub(crate) fn duration(&self) -> Span {
        Span::ratio(self.workload, self.procs as u128)
    }
}

/// Sequential tasks for every object, in object order.
pub fn tasks_for(objects: &[Object]) -> Vec<TaskSpec> {
    objects.iter().map(TaskSpec::for_object).collect()
}

/// Estimated duration `W_i / P_i` of a task.
pub fn task_duration(task: &TaskSpec) -> Result<Span> {
    if task.procs == 0 {
        return Err(Error::InvalidTask { object_id: task.object_id });
    }
    Ok(task.duration())
}

pub(crate) fn check_tasks(tasks: &[TaskSpec]) -> Result<()> {
    match tasks.iter().find(|t| t.procs == 0) {
        Some(t) => Err(Error::InvalidTask { object_id: t.object_id }),
        None => Ok(()),
    }
}

/// Cost coefficients converting work into seconds.
///
/// All coefficients are in seconds per unit named in the field docs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineModel {
    /// Per work unit of dense internal-problem arithmetic.
    pub t_work: f64,
    /// Per owned edge of external near-region work.
    pub t_near: f64,
    /// Per `G log2 G` of the shared FFT grid term.
    pub t_fft: f64,
    /// Per `sqrt(W)` per unit of process-grid perimeter `r + c`.
    pub gamma_grid: f64,
    /// Per redistribution message.
    pub alpha_msg: f64,
    /// Per redistributed edge.
    pub beta_edge: f64,
    /// AIM grid size `Nx * Ny * Nz`.
    pub grid_points: u64,
}

impl Default for MachineModel {
    fn default() -> Self {
        MachineModel {
            t_work: 1e-9,
            t_near: 5e-7,
            t_fft: 2e-9,
            gamma_grid: 1e-9,
            alpha_msg: 1e-5,
            beta_edge: 1e-8,
            grid_points: 1,
        }
    }
}

impl MachineModel {
    pub fn with_grid(self, grid: [u64; 3]) -> Self {
        MachineModel { grid_points: grid.iter().product(), ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let coeffs = [
            ("t_work", self.t_work),
            ("t_near", self.t_near),
            ("t_fft", self.t_fft),
            ("gamma_grid", self.gamma_grid),
            ("alpha_msg", self.alpha_msg),
            ("beta_edge", self.beta_edge),
        ];
        for (name, v) in coeffs {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "machine coefficient {name} must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A complete, self-contained experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub objects: Vec<Object>,
    /// Processor counts to sweep.
    pub procs_list: Vec<usize>,
    /// Solver iteration count used as a multiplier for totals.
    pub iterations: u32,
    pub machine: MachineModel,
    pub cutoff: u32,
    /// AIM grid dimensions.
    pub grid: [u64; 3],
}

impl Scenario {
    pub fn total_edges(&self) -> u64 {
        self.objects.iter().map(|o| o.edges).sum()
    }

    pub fn tasks(&self) -> Vec<TaskSpec> {
        tasks_for(&self.objects)
    }

    /// Checks every type-level invariant. Object ids must equal their
    /// position in the list.
    pub fn validate(&self) -> Result<()> {
        if self.objects.is_empty() {
            return Err(Error::InvalidScenario("scenario has no objects".into()));
        }
        for (i, o) in self.objects.iter().enumerate() {
            if o.id != i {
                return Err(Error::InvalidScenario(format!(
                    "object at position {i} has id {}; ids must be 0..n in order",
                    o.id
                )));
            }
        }
        if self.procs_list.contains(&0) {
            return Err(Error::InvalidScenario("processor counts must be at least 1".into()));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidScenario("iterations must be at least 1".into()));
        }
        if self.cutoff == 0 {
            return Err(Error::InvalidScenario("cutoff must be at least 1".into()));
        }
        if self.grid.contains(&0) {
            return Err(Error::InvalidScenario("grid dimensions must be positive".into()));
        }
        if self.machine.grid_points != self.grid.iter().product::<u64>() {
            return Err(Error::InvalidScenario("machine grid_points disagrees with grid".into()));
        }
        self.machine.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workload_is_edges_squared() {
        assert_eq!(estimate_workload(0), 0);
        assert_eq!(estimate_workload(1000), 1_000_000);
        // 70,260 edges over 10 identical conductors.
        assert_eq!(estimate_workload(7026), 49_364_676);
    }

    #[test]
    fn workload_is_monotone() {
        let mut prev = 0;
        for e in 0..5000u64 {
            let w = estimate_workload(e);
            assert!(w >= prev);
            prev = w;
        }
    }

    #[test]
    fn durations() {
        let t = |w, p| TaskSpec { object_id: 0, workload: w, procs: p };
        assert_eq!(task_duration(&t(12, 4)).unwrap(), Span::from_int(3));
        assert_eq!(task_duration(&t(8, 1)).unwrap(), Span::from_int(8));
        assert_eq!(task_duration(&t(49_364_676, 2)).unwrap(), Span::from_int(24_682_338));
        assert_eq!(task_duration(&t(8, 0)), Err(Error::InvalidTask { object_id: 0 }));
    }

    #[test]
    fn sequential_duration_equals_workload() {
        for w in [0u128, 1, 17, 49_364_676] {
            let task = TaskSpec { object_id: 3, workload: w, procs: 1 };
            assert_eq!(task_duration(&task).unwrap(), Span::from_int(w));
        }
    }

    #[test]
    fn scenario_rejects_bad_ids() {
        let s = Scenario {
            name: "x".into(),
            objects: vec![Object::new(1, 4)],
            procs_list: vec![1],
            iterations: 1,
            machine: MachineModel::default().with_grid([1, 1, 1]),
            cutoff: DEFAULT_CUTOFF,
            grid: [1, 1, 1],
        };
        assert!(matches!(s.validate(), Err(Error::InvalidScenario(_))));
    }
}
