use super::span::Span;
use super::TaskSpec;
use crate::error::{Error, Result};

/// A schedule `C`: one ordered task list per processor.
///
/// Row `p` lists the task indices processor `p` runs, in order; a parallel
/// task appears in the row of every processor of its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    rows: Vec<Vec<usize>>,
    start_times: Vec<Vec<Span>>,
    proc_assignment: Vec<Vec<usize>>,
    finish_times: Vec<Span>,
    release: Vec<Span>,
}

impl Schedule {
    pub(crate) fn from_parts(
        rows: Vec<Vec<usize>>,
        start_times: Vec<Vec<Span>>,
        proc_assignment: Vec<Vec<usize>>,
        finish_times: Vec<Span>,
        release: Vec<Span>,
    ) -> Self {
        Schedule { rows, start_times, proc_assignment, finish_times, release }
    }

    /// Number of processors (rows).
    pub fn procs(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, p: usize) -> &[usize] {
        &self.rows[p]
    }

    pub fn start_times(&self) -> &[Vec<Span>] {
        &self.start_times
    }

    /// Processors running each task, ascending.
    pub fn proc_assignment(&self) -> &[Vec<usize>] {
        &self.proc_assignment
    }

    /// Per-processor finish time `F_p`.
    pub fn finish_times(&self) -> &[Span] {
        &self.finish_times
    }

    /// Per-processor time at which the processor becomes available.
    pub fn release_times(&self) -> &[Span] {
        &self.release
    }

    /// Schedule length `C_max = max_p F_p`.
    pub fn makespan(&self) -> Span {
        self.finish_times.iter().copied().max().unwrap_or(Span::ZERO)
    }

    /// Checks every structural invariant of a schedule built for `tasks`:
    /// exact-once coverage on the assigned processors, simultaneous starts of
    /// parallel tasks, the `sum P_i <= P` budget over parallel tasks, and
    /// finish times equal to the gap-free sum of slot durations.
    pub fn validate(&self, tasks: &[TaskSpec]) -> Result<()> {
        let procs = self.rows.len();
        let fail = |msg: String| Err(Error::InvalidSchedule(msg));

        if self.start_times.len() != procs
            || self.finish_times.len() != procs
            || self.release.len() != procs
        {
            return fail("per-processor arrays disagree in length".into());
        }
        if self.proc_assignment.len() != tasks.len() {
            return fail(format!(
                "{} task assignments for {} tasks",
                self.proc_assignment.len(),
                tasks.len()
            ));
        }

        let mut budget = 0usize;
        for (i, (task, group)) in tasks.iter().zip(&self.proc_assignment).enumerate() {
            if task.procs == 0 {
                return Err(Error::InvalidTask { object_id: task.object_id });
            }
            if group.len() != task.procs as usize {
                return fail(format!(
                    "task {i} has P_i = {} but runs on {} processors",
                    task.procs,
                    group.len()
                ));
            }
            if group.windows(2).any(|w| w[0] >= w[1]) || group.iter().any(|&p| p >= procs) {
                return fail(format!("task {i} has a malformed processor group {group:?}"));
            }
            if task.is_parallel() {
                budget += task.procs as usize;
            }
        }
        if budget > procs {
            return fail(format!("parallel tasks use {budget} processors, only {procs} exist"));
        }

        // Where each task was seen: (processor, start time).
        let mut seen: Vec<Vec<(usize, Span)>> = vec![Vec::new(); tasks.len()];
        for p in 0..procs {
            let row = &self.rows[p];
            let starts = &self.start_times[p];
            if row.len() != starts.len() {
                return fail(format!("processor {p} has mismatched slot and start counts"));
            }
            let mut clock = self.release[p];
            for (slot, (&t, &start)) in row.iter().zip(starts).enumerate() {
                if t >= tasks.len() {
                    return fail(format!("processor {p} references unknown task {t}"));
                }
                let gap_ok = if slot == 0 && tasks[t].is_parallel() {
                    start >= clock
                } else {
                    start == clock
                };
                if !gap_ok {
                    return fail(format!(
                        "processor {p} slot {slot} starts at {start}, expected {clock}"
                    ));
                }
                clock = start + tasks[t].duration();
                seen[t].push((p, start));
            }
            if self.finish_times[p] != clock {
                return fail(format!(
                    "processor {p} finish time {} differs from slot sum {clock}",
                    self.finish_times[p]
                ));
            }
        }

        for (i, hits) in seen.iter().enumerate() {
            let on: Vec<usize> = hits.iter().map(|&(p, _)| p).collect();
            if on != self.proc_assignment[i] {
                return fail(format!(
                    "task {i} appears on {on:?} but is assigned to {:?}",
                    self.proc_assignment[i]
                ));
            }
            if hits.windows(2).any(|w| w[0].1 != w[1].1) {
                return fail(format!("parallel task {i} does not start simultaneously"));
            }
        }
        Ok(())
    }
}
