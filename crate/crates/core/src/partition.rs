//! External-problem mesh partitioning and the mapping of schedule rows onto
//! the processes that own those partitions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{MachineModel, Object, Schedule, TaskSpec};

/// How many edges of each object every process owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMap {
    /// `owned[p][i]`: edges of object `i` held by process `p`.
    owned: Vec<Vec<u64>>,
}

impl PartitionMap {
    /// Builds a map from a process-by-object matrix.
    pub fn from_matrix(owned: Vec<Vec<u64>>) -> Result<Self> {
        if owned.is_empty() {
            return Err(Error::Shape("partition needs at least one process".into()));
        }
        let n = owned[0].len();
        if owned.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("ragged partition matrix".into()));
        }
        Ok(PartitionMap { owned })
    }

    pub fn procs(&self) -> usize {
        self.owned.len()
    }

    pub fn objects(&self) -> usize {
        self.owned[0].len()
    }

    pub fn owned(&self, process: usize, object: usize) -> u64 {
        self.owned[process][object]
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.owned
    }

    /// Edges held by `process` across all objects.
    pub fn load(&self, process: usize) -> u64 {
        self.owned[process].iter().sum()
    }

    pub fn max_load(&self) -> u64 {
        (0..self.procs()).map(|p| self.load(p)).max().unwrap_or(0)
    }

    /// Processes holding a nonzero share of `object`, ascending.
    pub fn owners(&self, object: usize) -> Vec<usize> {
        (0..self.procs()).filter(|&p| self.owned[p][object] > 0).collect()
    }

    pub fn partition_count(&self, object: usize) -> usize {
        self.owners(object).len()
    }

    /// Column sums must reproduce each object's edge count.
    pub fn validate(&self, objects: &[Object]) -> Result<()> {
        if objects.len() != self.objects() {
            return Err(Error::Shape(format!(
                "partition covers {} objects, scenario has {}",
                self.objects(),
                objects.len()
            )));
        }
        for (i, o) in objects.iter().enumerate() {
            let sum: u64 = self.owned.iter().map(|row| row[i]).sum();
            if sum != o.edges {
                return Err(Error::Shape(format!(
                    "object {i} has {} edges but the partition holds {sum}",
                    o.edges
                )));
            }
        }
        Ok(())
    }
}

/// Splits `total` into `parts` near-equal integers, larger ones first.
pub(crate) fn even_split(total: u64, parts: usize) -> Vec<u64> {
    let parts_u = parts as u64;
    let base = total / parts_u;
    let extra = (total % parts_u) as usize;
    (0..parts).map(|j| base + u64::from(j < extra)).collect()
}

/// Greedy object-aware partition of the external problem over `procs`
/// processes.
///
/// With `target = sum(edges) / procs`, objects are taken in descending edge
/// count (ascending id on ties). An object no larger than `target` goes whole
/// to the least-loaded process; a larger one is cut into
/// `ceil(edges / target)` near-equal chunks placed on that many least-loaded
/// processes, the biggest chunk on the lightest process.
pub fn partition_external(objects: &[Object], procs: usize) -> Result<PartitionMap> {
    if procs == 0 {
        return Err(Error::Shape("partition needs at least one process".into()));
    }
    let total: u64 = objects.iter().map(|o| o.edges).sum();
    if total == 0 {
        return Err(Error::InvalidScenario("partitioning needs at least one edge".into()));
    }

    let mut order: Vec<usize> = (0..objects.len()).collect();
    order.sort_by(|&a, &b| objects[b].edges.cmp(&objects[a].edges).then(a.cmp(&b)));

    let mut owned = vec![vec![0u64; objects.len()]; procs];
    let mut loads = vec![0u64; procs];
    let p = procs as u128;
    let t = total as u128;

    for i in order {
        let edges = objects[i].edges;
        // edges <= total / procs  <=>  edges * procs <= total
        let k = if edges as u128 * p <= t {
            1
        } else {
            (edges as u128 * p).div_ceil(t) as usize
        };
        let mut lightest: Vec<usize> = (0..procs).collect();
        lightest.sort_by_key(|&q| (loads[q], q));
        for (&q, chunk) in lightest.iter().zip(even_split(edges, k)) {
            owned[q][i] += chunk;
            loads[q] += chunk;
        }
    }
    Ok(PartitionMap { owned })
}

/// The row of the schedule each process executes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskListAssignment {
    /// `process_to_row[p]` is the schedule row run by process `p`.
    pub process_to_row: Vec<usize>,
    /// Shared edge count `N_E,p` between each process and its row.
    pub overlap: Vec<u64>,
}

impl TaskListAssignment {
    pub fn row_to_process(&self) -> Vec<usize> {
        let mut inv = vec![0; self.process_to_row.len()];
        for (p, &r) in self.process_to_row.iter().enumerate() {
            inv[r] = p;
        }
        inv
    }

    pub fn total_overlap(&self) -> u64 {
        self.overlap.iter().sum()
    }
}

/// Distinct objects of each schedule row.
fn row_objects(schedule: &Schedule, tasks: &[TaskSpec]) -> Vec<Vec<usize>> {
    schedule
        .rows()
        .iter()
        .map(|row| {
            let set: BTreeSet<usize> = row.iter().map(|&t| tasks[t].object_id).collect();
            set.into_iter().collect()
        })
        .collect()
}

/// `N[p][r]`: edges of row `r`'s objects already held by process `p`.
pub fn overlap_matrix(schedule: &Schedule, tasks: &[TaskSpec], partition: &PartitionMap) -> Result<Vec<Vec<u64>>> {
    let procs = partition.procs();
    if schedule.procs() != procs {
        return Err(Error::Shape(format!(
            "schedule has {} rows but the partition has {procs} processes",
            schedule.procs()
        )));
    }
    if tasks.iter().any(|t| t.object_id >= partition.objects()) {
        return Err(Error::Shape("task refers to an object outside the partition".into()));
    }
    let owners: Vec<Vec<usize>> = (0..partition.objects()).map(|i| partition.owners(i)).collect();
    let mut n = vec![vec![0u64; procs]; procs];
    for (r, objs) in row_objects(schedule, tasks).iter().enumerate() {
        for &o in objs {
            for &p in &owners[o] {
                n[p][r] += partition.owned(p, o);
            }
        }
    }
    Ok(n)
}

/// Gives every process one schedule row.
///
/// Each process scores every row by the edges it already owns of that row's
/// objects; processes then choose in ascending id order, each taking the
/// remaining row with its highest score (lowest row index on ties).
pub fn assign_task_lists(
    schedule: &Schedule,
    tasks: &[TaskSpec],
    partition: &PartitionMap,
) -> Result<TaskListAssignment> {
    Ok(assign_rows(&overlap_matrix(schedule, tasks, partition)?))
}

/// The greedy choice of [`assign_task_lists`] on a square overlap matrix
/// `n[p][r]`.
pub fn assign_rows(n: &[Vec<u64>]) -> TaskListAssignment {
    let procs = n.len();
    let mut taken = vec![false; procs];
    let mut process_to_row = Vec::with_capacity(procs);
    let mut overlap = Vec::with_capacity(procs);
    for scores in n {
        let r = (0..procs)
            .filter(|&r| !taken[r])
            .max_by(|&a, &b| scores[a].cmp(&scores[b]).then(b.cmp(&a)))
            .expect("a row remains for every process");
        taken[r] = true;
        process_to_row.push(r);
        overlap.push(scores[r]);
    }
    TaskListAssignment { process_to_row, overlap }
}

/// Data moved in one redistribution stage.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CommCost {
    pub edges_moved: u64,
    /// Distinct ordered (sender, receiver) pairs that exchange data.
    pub messages: u64,
    pub seconds: f64,
}

/// Redistribution traffic needed to run `schedule` under `assignment`.
///
/// A task's object is divided evenly across the processes of its group (in
/// ascending process order). Each process keeps as much of what it already
/// owns as its share allows; the surplus of the owners is then matched to the
/// deficits of the group in ascending process order.
pub fn redistribution_cost(
    assignment: &TaskListAssignment,
    schedule: &Schedule,
    tasks: &[TaskSpec],
    partition: &PartitionMap,
    machine: &MachineModel,
) -> Result<CommCost> {
    let procs = partition.procs();
    if assignment.process_to_row.len() != procs || schedule.procs() != procs {
        return Err(Error::Shape("assignment, schedule and partition disagree on process count".into()));
    }
    let row_to_process = assignment.row_to_process();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges_moved = 0u64;

    for (i, task) in tasks.iter().enumerate() {
        let o = task.object_id;
        let mut group: Vec<usize> = schedule.proc_assignment()[i].iter().map(|&r| row_to_process[r]).collect();
        group.sort_unstable();
        let edges: u64 = (0..procs).map(|p| partition.owned(p, o)).sum();

        let mut share = vec![0u64; procs];
        for (&q, s) in group.iter().zip(even_split(edges, group.len())) {
            share[q] = s;
        }
        let mut surplus = Vec::new();
        let mut deficit = Vec::new();
        for (p, &want) in share.iter().enumerate() {
            let have = partition.owned(p, o);
            let keep = have.min(want);
            if have > keep {
                surplus.push((p, have - keep));
            }
            if want > keep {
                deficit.push((p, want - keep));
            }
        }

        let (mut s, mut d) = (0, 0);
        while s < surplus.len() && d < deficit.len() {
            let amount = surplus[s].1.min(deficit[d].1);
            pairs.insert((surplus[s].0, deficit[d].0));
            edges_moved += amount;
            surplus[s].1 -= amount;
            deficit[d].1 -= amount;
            if surplus[s].1 == 0 {
                s += 1;
            }
            if deficit[d].1 == 0 {
                d += 1;
            }
        }
    }

    let messages = pairs.len() as u64;
    Ok(CommCost {
        edges_moved,
        messages,
        seconds: machine.alpha_msg * messages as f64 + machine.beta_edge * edges_moved as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{tasks_for, Span};
    use crate::sched::lpt_schedule;

    fn objs(edges: &[u64]) -> Vec<Object> {
        edges.iter().enumerate().map(|(i, &e)| Object::new(i, e)).collect()
    }

    /// One sequential task per row, row `r` running object `r`.
    fn diagonal_schedule(n: usize) -> (Vec<TaskSpec>, Schedule) {
        let tasks: Vec<TaskSpec> =
            (0..n).map(|i| TaskSpec { object_id: i, workload: 1, procs: 1 }).collect();
        let sched = Schedule::from_parts(
            (0..n).map(|i| vec![i]).collect(),
            vec![vec![Span::ZERO]; n],
            (0..n).map(|i| vec![i]).collect(),
            vec![Span::from_int(1); n],
            vec![Span::ZERO; n],
        );
        (tasks, sched)
    }

    #[test]
    fn bus_conductors_split_in_two() {
        let objects = objs(&[7026; 10]);
        let part = partition_external(&objects, 20).unwrap();
        part.validate(&objects).unwrap();
        for i in 0..10 {
            assert_eq!(part.partition_count(i), 2);
        }
        for p in 0..20 {
            assert_eq!(part.load(p), 3513);
        }
    }

    #[test]
    fn symmetric_and_trivial_partitions() {
        let objects = objs(&[100; 4]);
        let part = partition_external(&objects, 4).unwrap();
        for i in 0..4 {
            assert_eq!(part.partition_count(i), 1);
        }
        assert!((0..4).all(|p| part.load(p) == 100));

        let one = partition_external(&objs(&[100]), 1).unwrap();
        assert_eq!(one.matrix(), &[vec![100]]);
    }

    #[test]
    fn zero_edge_total_is_rejected() {
        assert!(partition_external(&objs(&[0, 0]), 2).is_err());
    }

    #[test]
    fn assignment_follows_overlap() {
        let (tasks, sched) = diagonal_schedule(2);
        let part = PartitionMap::from_matrix(vec![vec![100, 10], vec![10, 100]]).unwrap();
        let a = assign_task_lists(&sched, &tasks, &part).unwrap();
        assert_eq!(a.process_to_row, vec![0, 1]);
        assert_eq!(a.overlap, vec![100, 100]);
    }

    #[test]
    fn greedy_assignment_is_not_globally_optimal() {
        // Overlaps p0: [100, 90], p1: [95, 5].
        let (tasks, sched) = diagonal_schedule(2);
        let part = PartitionMap::from_matrix(vec![vec![100, 90], vec![95, 5]]).unwrap();
        let a = assign_task_lists(&sched, &tasks, &part).unwrap();
        assert_eq!(a.process_to_row, vec![0, 1]);
        assert_eq!(a.total_overlap(), 105);
    }

    #[test]
    fn single_process() {
        let (tasks, sched) = diagonal_schedule(1);
        let part = PartitionMap::from_matrix(vec![vec![7]]).unwrap();
        let a = assign_task_lists(&sched, &tasks, &part).unwrap();
        assert_eq!(a.process_to_row, vec![0]);
    }

    #[test]
    fn shape_mismatch() {
        let (tasks, sched) = diagonal_schedule(2);
        let part = PartitionMap::from_matrix(vec![vec![1, 1]]).unwrap();
        assert!(matches!(assign_task_lists(&sched, &tasks, &part), Err(Error::Shape(_))));
    }

    #[test]
    fn aligned_rows_need_no_traffic() {
        let (tasks, sched) = diagonal_schedule(3);
        let part = PartitionMap::from_matrix(vec![vec![5, 0, 0], vec![0, 6, 0], vec![0, 0, 7]]).unwrap();
        let a = assign_task_lists(&sched, &tasks, &part).unwrap();
        let c = redistribution_cost(&a, &sched, &tasks, &part, &MachineModel::default()).unwrap();
        assert_eq!((c.edges_moved, c.messages), (0, 0));
        assert_eq!(c.seconds, 0.0);
    }

    #[test]
    fn one_owner_feeds_another_row() {
        // p0 owns all of A and B; row0 = {A} on p0, row1 = {B} on p1.
        let (tasks, sched) = diagonal_schedule(2);
        let part = PartitionMap::from_matrix(vec![vec![30, 40], vec![0, 0]]).unwrap();
        let a = TaskListAssignment { process_to_row: vec![0, 1], overlap: vec![30, 0] };
        let m = MachineModel { alpha_msg: 2.0, beta_edge: 0.5, ..MachineModel::default() };
        let c = redistribution_cost(&a, &sched, &tasks, &part, &m).unwrap();
        assert_eq!((c.edges_moved, c.messages), (40, 1));
        assert_eq!(c.seconds, 2.0 + 20.0);
    }

    #[test]
    fn parallel_task_receives_even_shares() {
        // One object of 10 edges, all on p0, running on both processes.
        let objects = objs(&[10]);
        let tasks = vec![tasks_for(&objects)[0].with_procs(2)];
        let sched = lpt_schedule(&tasks, 2, None).unwrap().schedule;
        let part = PartitionMap::from_matrix(vec![vec![10], vec![0]]).unwrap();
        let a = assign_task_lists(&sched, &tasks, &part).unwrap();
        let c = redistribution_cost(&a, &sched, &tasks, &part, &MachineModel::default()).unwrap();
        assert_eq!((c.edges_moved, c.messages), (5, 1));
    }
}
