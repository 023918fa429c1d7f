//! External mesh partitioning, task-list assignment and the resulting
//! redistribution traffic.
//!
//! Run with `cargo run --example partition_and_assign`.

use bemsched::scenarios::gen_random;
use bemsched::{assign_task_lists, part_schedule, partition_external, redistribution_cost};

fn main() -> bemsched::Result<()> {
    let scenario = gen_random(6, 200..=4000, 11)?;
    let procs = 8;
    let tasks = scenario.tasks();

    let map = partition_external(&scenario.objects, procs)?;
    for p in 0..procs {
        println!("process {p}: owns {:?} (load {})", map.matrix()[p], map.load(p));
    }

    let res = part_schedule(&tasks, procs, Some(scenario.cutoff))?;
    let molded = res.molded(&tasks);
    let assignment = assign_task_lists(&res.schedule, &molded, &map)?;
    println!("process -> row {:?}", assignment.process_to_row);
    println!("edges already in place: {}", assignment.total_overlap());

    let comm = redistribution_cost(&assignment, &res.schedule, &molded, &map, &scenario.machine)?;
    println!("moved {} edges in {} messages ({:.3e} s)", comm.edges_moved, comm.messages, comm.seconds);
    Ok(())
}
