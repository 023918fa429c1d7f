//! List scheduling of internal-problem tasks.
//!
//! [`lpt_schedule`] handles fixed processor counts, [`part_schedule`] chooses
//! them (with or without the approximate-square restriction), and
//! [`oracle_optimal`] is a brute-force reference for small instances.

mod lpt;
mod oracle;
mod part;

pub use lpt::lpt_schedule;
pub use oracle::{oracle_optimal, ORACLE_MAX_PROCS, ORACLE_MAX_TASKS};
pub use part::part_schedule;

use crate::error::{Error, Result};
use crate::model::{Schedule, Span, TaskSpec};

/// A schedule together with the processor counts it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleResult {
    pub schedule: Schedule,
    /// Schedule length in work units.
    pub c_max: Span,
    /// Final `P_i` for each input task.
    pub procs_per_task: Vec<u32>,
    /// Outer-loop iterations entered by [`part_schedule`]; zero for plain LPT.
    pub iterations_taken: usize,
}

impl ScheduleResult {
    /// The input tasks with their final processor counts applied.
    pub fn molded(&self, tasks: &[TaskSpec]) -> Vec<TaskSpec> {
        tasks
            .iter()
            .zip(&self.procs_per_task)
            .map(|(t, &p)| t.with_procs(p))
            .collect()
    }
}

/// Whether `n` is `Q²` or `Q(Q+1)` for some `Q >= 1`.
pub fn is_approx_square(n: u32) -> bool {
    if n == 0 {
        return false;
    }
    let q = n.isqrt();
    q * q == n || q * (q + 1) == n
}

/// Smallest `d >= 1` such that `p + d` is an approximate square.
pub fn next_approx_square_increment(p: u32) -> u32 {
    (1..).find(|&d| is_approx_square(p + d)).expect("approximate squares are unbounded")
}

/// Perfectly balanced schedule length `sum W_i / P`.
pub fn ideal_length(tasks: &[TaskSpec], procs: usize) -> Result<Span> {
    if procs == 0 {
        return Err(Error::Shape("ideal length needs at least one processor".into()));
    }
    let total: u128 = tasks.iter().map(|t| t.workload).sum();
    Ok(Span::ratio(total, procs as u128))
}

/// Worst-case ratio of LPT against the optimum: `4/3 - 1/(3P)`.
pub fn lpt_bound(procs: usize) -> Result<Span> {
    if procs == 0 {
        return Err(Error::UndefinedBound { procs });
    }
    let p = procs as u128;
    Ok(Span::ratio(4 * p - 1, 3 * p))
}

/// Worst-case ratio of the moldable scheduler: `2 / (1 - 1/P)`.
pub fn part_bound(procs: usize) -> Result<Span> {
    if procs < 2 {
        return Err(Error::UndefinedBound { procs });
    }
    let p = procs as u128;
    Ok(Span::ratio(2 * p, p - 1))
}
