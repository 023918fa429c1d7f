//! Exhaustive optimum for small instances, used as a test reference.
//!
//! The search shares no code with the list schedulers: it enumerates
//! processor counts (when moldable) and then every sequential assignment by
//! branch and bound. The execution model is the one the heuristics use:
//! parallel tasks occupy disjoint groups from time zero, sequential tasks
//! follow on any processor.

use crate::error::{Error, Result};
use crate::model::{check_tasks, Span, TaskSpec};

pub const ORACLE_MAX_TASKS: usize = 12;
pub const ORACLE_MAX_PROCS: usize = 6;

/// Minimum achievable `C_max`.
///
/// With `moldable == false` each task keeps its own `P_i`. Otherwise every
/// task may take any `P_i` in `1..=procs` (further restricted by
/// `allowed[i]` when given) subject to `sum_{P_i > 1} P_i <= procs`.
pub fn oracle_optimal(
    tasks: &[TaskSpec],
    procs: usize,
    moldable: bool,
    allowed: Option<&[Vec<u32>]>,
) -> Result<Span> {
    if tasks.len() > ORACLE_MAX_TASKS || procs > ORACLE_MAX_PROCS {
        return Err(Error::InstanceTooLarge {
            tasks: tasks.len(),
            procs,
            max_tasks: ORACLE_MAX_TASKS,
            max_procs: ORACLE_MAX_PROCS,
        });
    }
    if procs == 0 {
        return Err(Error::Shape("a schedule needs at least one processor".into()));
    }
    if let Some(a) = allowed {
        if a.len() != tasks.len() {
            return Err(Error::Shape(format!("{} allowed sets for {} tasks", a.len(), tasks.len())));
        }
    }

    if !moldable {
        check_tasks(tasks)?;
        let counts: Vec<u32> = tasks.iter().map(|t| t.procs).collect();
        let used: usize = counts.iter().filter(|&&c| c > 1).map(|&c| c as usize).sum();
        if used > procs {
            return Err(Error::InfeasibleParallelSet { required: used, available: procs });
        }
        return Ok(fixed_optimum(tasks, &counts, procs, None).expect("unbounded search finds a schedule"));
    }

    let choices: Vec<Vec<u32>> = (0..tasks.len())
        .map(|i| {
            let mut c: Vec<u32> = match allowed {
                Some(a) => a[i].iter().copied().filter(|&p| p >= 1 && p as usize <= procs).collect(),
                None => (1..=procs as u32).collect(),
            };
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    if let Some(i) = choices.iter().position(|c| c.is_empty()) {
        return Err(Error::InvalidTask { object_id: tasks[i].object_id });
    }

    let mut best: Option<Span> = None;
    let mut counts = vec![1u32; tasks.len()];
    enumerate_counts(tasks, procs, &choices, 0, procs, &mut counts, &mut best);
    best.ok_or_else(|| Error::InfeasibleParallelSet { required: procs + 1, available: procs })
}

fn enumerate_counts(
    tasks: &[TaskSpec],
    procs: usize,
    choices: &[Vec<u32>],
    k: usize,
    budget: usize,
    counts: &mut Vec<u32>,
    best: &mut Option<Span>,
) {
    if k == tasks.len() {
        if let Some(v) = fixed_optimum(tasks, counts, procs, *best) {
            *best = Some(v);
        }
        return;
    }
    for &c in &choices[k] {
        let cost = if c > 1 { c as usize } else { 0 };
        if cost > budget {
            continue;
        }
        counts[k] = c;
        enumerate_counts(tasks, procs, choices, k + 1, budget - cost, counts, best);
    }
}

/// Optimum for fixed counts, or `None` if nothing beats `bound`.
fn fixed_optimum(tasks: &[TaskSpec], counts: &[u32], procs: usize, bound: Option<Span>) -> Option<Span> {
    let mut loads = Vec::with_capacity(procs);
    let mut seq = Vec::new();
    for (t, &c) in tasks.iter().zip(counts) {
        let d = Span::ratio(t.workload, c as u128);
        if c > 1 {
            loads.extend(std::iter::repeat_n(d, c as usize));
        } else {
            seq.push(d);
        }
    }
    loads.resize(procs, Span::ZERO);
    seq.sort_by(|a, b| b.cmp(a));

    let floor = loads.iter().copied().max().unwrap_or(Span::ZERO);
    if bound.is_some_and(|b| floor >= b) {
        return None;
    }
    let mut suffix = vec![Span::ZERO; seq.len() + 1];
    for i in (0..seq.len()).rev() {
        suffix[i] = suffix[i + 1] + seq[i];
    }
    let mut search = Search { seq: &seq, suffix: &suffix, loads, best: bound, improved: false };
    search.run(0, floor);
    search.improved.then_some(search.best).flatten()
}

struct Search<'a> {
    seq: &'a [Span],
    suffix: &'a [Span],
    loads: Vec<Span>,
    best: Option<Span>,
    improved: bool,
}

impl Search<'_> {
    fn run(&mut self, k: usize, current_max: Span) {
        if let Some(b) = self.best {
            if current_max >= b {
                return;
            }
            // Average-load bound: total work spread over every processor.
            let total: Span = self.loads.iter().copied().sum::<Span>() + self.suffix[k];
            let procs = self.loads.len() as u128;
            if total >= b.scaled(procs, 1) {
                return;
            }
        }
        if k == self.seq.len() {
            self.best = Some(current_max);
            self.improved = true;
            return;
        }
        let d = self.seq[k];
        let mut tried: Vec<Span> = Vec::with_capacity(self.loads.len());
        for p in 0..self.loads.len() {
            let l = self.loads[p];
            if tried.contains(&l) {
                continue;
            }
            tried.push(l);
            self.loads[p] = l + d;
            self.run(k + 1, current_max.max(l + d));
            self.loads[p] = l;
        }
    }
}
