use thiserror::Error;

/// Errors produced by the scheduling, partitioning and simulation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid task for object {object_id}: processor count must be at least 1")]
    InvalidTask { object_id: usize },

    #[error("parallel tasks need {required} processors but only {available} are available")]
    InfeasibleParallelSet { required: usize, available: usize },

    #[error("worst-case ratio is undefined for {procs} processor(s)")]
    UndefinedBound { procs: usize },

    #[error("instance too large for exhaustive search: {tasks} tasks on {procs} processors (limit {max_tasks} tasks, {max_procs} processors)")]
    InstanceTooLarge {
        tasks: usize,
        procs: usize,
        max_tasks: usize,
        max_procs: usize,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("schedule invariant violated: {0}")]
    InvalidSchedule(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
