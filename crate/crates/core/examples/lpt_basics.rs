//! LPT on sequential tasks, compared against the exact optimum.
//!
//! Run with `cargo run --example lpt_basics`.

use bemsched::sched::lpt_bound;
use bemsched::{lpt_schedule, oracle_optimal, TaskSpec};

fn main() -> bemsched::Result<()> {
    let tasks: Vec<TaskSpec> = [3u128, 3, 2, 2, 2]
        .iter()
        .enumerate()
        .map(|(i, &w)| TaskSpec { object_id: i, workload: w, procs: 1 })
        .collect();

    let res = lpt_schedule(&tasks, 2, None)?;
    for (p, row) in res.schedule.rows().iter().enumerate() {
        println!("processor {p}: tasks {row:?}, finishes at {}", res.schedule.finish_times()[p]);
    }
    let opt = oracle_optimal(&tasks, 2, false, None)?;
    println!("LPT {} vs optimum {opt}: ratio {:.4}", res.c_max, res.c_max.ratio_to(&opt));
    println!("worst case allowed on 2 processors: {}", lpt_bound(2)?);
    Ok(())
}
