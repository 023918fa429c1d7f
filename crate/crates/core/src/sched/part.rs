use super::{lpt_schedule, next_approx_square_increment, ScheduleResult};
use crate::error::{Error, Result};
use crate::model::{check_tasks, TaskSpec};

/// Moldable scheduling by repeated parallelization of the longest task.
///
/// Every task starts sequential. Each iteration picks the task with the
/// longest duration (lowest index on ties) and grows its processor count by
/// one, or, once `P_i` has reached `cutoff`, by the increment that lands on
/// the next approximate square. The schedule is rebuilt with
/// [`lpt_schedule`] after every step. `cutoff = None` is the unrestricted
/// algorithm (always increment by one).
///
/// The loop stops when the longest task no longer defines `C_max`, when the
/// processor budget `sum_{P_i > 1} P_i <= P` would be exceeded, or when a
/// rebuilt schedule is longer than the current one. A rebuilt schedule of
/// equal length is adopted as the new current state, so a run of equal-length
/// tasks can be parallelized together, but the result returned is always the
/// last schedule that was strictly shorter than its predecessor.
///
/// The input `procs` fields are ignored.
pub fn part_schedule(tasks: &[TaskSpec], procs: usize, cutoff: Option<u32>) -> Result<ScheduleResult> {
    if tasks.is_empty() {
        return Err(Error::Shape("part_schedule needs at least one task".into()));
    }
    if procs == 0 {
        return Err(Error::Shape("a schedule needs at least one processor".into()));
    }
    check_tasks(tasks)?;

    let mut current: Vec<TaskSpec> = tasks.iter().map(|t| t.with_procs(1)).collect();
    let mut schedule = lpt_schedule(&current, procs, None)?;
    let mut best = schedule.clone();
    let mut budget = procs as i64;
    let mut iterations = 0;

    while budget > 0 {
        iterations += 1;
        let (longest, h) = current
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t.duration()))
            // max_by keeps the last maximum; reverse the index so the lowest wins.
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty task list");
        if h.is_zero() {
            break;
        }

        let p_i = current[longest].procs;
        let step = match cutoff {
            Some(c) if p_i >= c => next_approx_square_increment(p_i),
            _ => 1,
        };
        budget -= if p_i == 1 { step as i64 + 1 } else { step as i64 };
        if schedule.c_max != h || budget < 0 {
            break;
        }

        current[longest].procs = p_i + step;
        let candidate = lpt_schedule(&current, procs, None)?;
        if candidate.c_max > schedule.c_max {
            current[longest].procs = p_i;
            break;
        }
        if candidate.c_max < schedule.c_max {
            best = candidate.clone();
        }
        schedule = candidate;
    }

    best.iterations_taken = iterations;
    Ok(best)
}
