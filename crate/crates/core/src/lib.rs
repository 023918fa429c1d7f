//! Load balancing for boundary-element solvers whose objects carry their own
//! dense internal problems.
//!
//! The internal workloads are treated as moldable tasks and scheduled with
//! LPT and a moldable variant that keeps large processor groups on
//! approximate squares ([`sched`]). Schedule rows are matched to the
//! processes owning each object's external mesh partition ([`partition`]),
//! and a cost model ([`sim`]) compares the resulting solver iterations with
//! the unbalanced alternatives. Generators for the benchmark structures live
//! in [`scenarios`]; [`cli`] provides file formats and the command line.

pub mod cli;
pub mod error;
pub mod model;
pub mod partition;
pub mod scenarios;
pub mod sched;
pub mod sim;

pub use error::{Error, Result};
pub use model::{estimate_workload, task_duration, MachineModel, Object, Scenario, Schedule, Span, TaskSpec};
pub use partition::{assign_rows, assign_task_lists, partition_external, redistribution_cost, PartitionMap};
pub use sched::{lpt_schedule, oracle_optimal, part_schedule, ScheduleResult};
pub use sim::{simulate, SimReport, StrategyKind};
