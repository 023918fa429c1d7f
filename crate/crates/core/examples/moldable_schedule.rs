//! Part_Schedule turns the longest tasks into parallel ones until the
//! schedule stops shrinking.
//!
//! Run with `cargo run --example moldable_schedule`.

use bemsched::sched::ideal_length;
use bemsched::{lpt_schedule, part_schedule, TaskSpec};

fn main() -> bemsched::Result<()> {
    let tasks: Vec<TaskSpec> = [400u128, 90, 80, 60, 40, 30]
        .iter()
        .enumerate()
        .map(|(i, &w)| TaskSpec { object_id: i, workload: w, procs: 1 })
        .collect();
    let procs = 8;

    let lpt = lpt_schedule(&tasks, procs, None)?;
    let part = part_schedule(&tasks, procs, Some(20))?;
    println!("ideal length      {}", ideal_length(&tasks, procs)?);
    println!("sequential LPT    {}", lpt.c_max);
    println!("moldable schedule {} after {} iterations", part.c_max, part.iterations_taken);
    println!("processors per task {:?}", part.procs_per_task);

    let molded = part.molded(&tasks);
    part.schedule.validate(&molded)?;
    for (i, group) in part.schedule.proc_assignment().iter().enumerate() {
        let lead = group[0];
        let slot = part.schedule.row(lead).iter().position(|&t| t == i).unwrap();
        println!("  task {i} on {group:?} from {}", part.schedule.start_times()[lead][slot]);
    }
    Ok(())
}
