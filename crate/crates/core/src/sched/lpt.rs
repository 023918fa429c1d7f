use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::ScheduleResult;
use crate::error::{Error, Result};
use crate::model::{check_tasks, Schedule, Span, TaskSpec};

/// Longest-processing-time list scheduling of tasks with fixed `P_i`.
///
/// Parallel tasks (`P_i > 1`) are placed first on disjoint, contiguous,
/// lowest-index processor groups so that they all start together; the
/// remaining sequential tasks are then appended in order of descending
/// duration, each to the processor with the earliest finish time.
///
/// Ties: equal durations go in ascending task index, equal finish times pick
/// the lowest processor index. `initial_finish` seeds each processor's `F_p`.
pub fn lpt_schedule(
    tasks: &[TaskSpec],
    procs: usize,
    initial_finish: Option<&[Span]>,
) -> Result<ScheduleResult> {
    if procs == 0 {
        return Err(Error::Shape("a schedule needs at least one processor".into()));
    }
    check_tasks(tasks)?;
    let release: Vec<Span> = match initial_finish {
        Some(seed) if seed.len() != procs => {
            return Err(Error::Shape(format!(
                "{} initial finish times for {procs} processors",
                seed.len()
            )))
        }
        Some(seed) => seed.to_vec(),
        None => vec![Span::ZERO; procs],
    };

    let required: usize = tasks
        .iter()
        .filter(|t| t.is_parallel())
        .map(|t| t.procs as usize)
        .sum();
    if required > procs {
        return Err(Error::InfeasibleParallelSet { required, available: procs });
    }

    let durations: Vec<Span> = tasks.iter().map(TaskSpec::duration).collect();
    let mut order: Vec<usize> = (0..tasks.len()).collect();
    order.sort_by(|&a, &b| durations[b].cmp(&durations[a]).then(a.cmp(&b)));

    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); procs];
    let mut starts: Vec<Vec<Span>> = vec![Vec::new(); procs];
    let mut assignment: Vec<Vec<usize>> = vec![Vec::new(); tasks.len()];
    let mut finish = release.clone();

    let mut next_free = 0;
    for &i in order.iter().filter(|&&i| tasks[i].is_parallel()) {
        let group = next_free..next_free + tasks[i].procs as usize;
        next_free = group.end;
        let start = group.clone().map(|p| release[p]).max().unwrap_or(Span::ZERO);
        for p in group.clone() {
            rows[p].push(i);
            starts[p].push(start);
            finish[p] = start + durations[i];
        }
        assignment[i] = group.collect();
    }

    let mut heap: BinaryHeap<Reverse<(Span, usize)>> =
        finish.iter().enumerate().map(|(p, &f)| Reverse((f, p))).collect();
    for &i in order.iter().filter(|&&i| !tasks[i].is_parallel()) {
        let Reverse((f, p)) = heap.pop().expect("at least one processor");
        rows[p].push(i);
        starts[p].push(f);
        let end = f + durations[i];
        finish[p] = end;
        assignment[i] = vec![p];
        heap.push(Reverse((end, p)));
    }

    let schedule = Schedule::from_parts(rows, starts, assignment, finish, release);
    Ok(ScheduleResult {
        c_max: schedule.makespan(),
        schedule,
        procs_per_task: tasks.iter().map(|t| t.procs).collect(),
        iterations_taken: 0,
    })
}
