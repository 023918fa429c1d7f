//! Approximate squares, the processor counts they produce above the cutoff,
//! and the grid term of the dense cost model.
//!
//! Run with `cargo run --example approx_squares`.

use bemsched::sched::{is_approx_square, next_approx_square_increment};
use bemsched::sim::{dense_task_time, grid_factors};
use bemsched::{MachineModel, TaskSpec};

fn main() {
    let squares: Vec<u32> = (1..=60).filter(|&n| is_approx_square(n)).collect();
    println!("approximate squares up to 60: {squares:?}");

    let mut p = 20;
    let mut walk = vec![p];
    while p < 200 {
        p += next_approx_square_increment(p);
        walk.push(p);
    }
    println!("growth above the cutoff: {walk:?}");

    let machine = MachineModel::default();
    let task = TaskSpec { object_id: 0, workload: 1_500_000_000, procs: 1 };
    println!("{:>5} {:>9} {:>12}", "P_i", "grid", "seconds");
    for procs in [29, 30, 31, 36, 37, 41, 42] {
        let (r, c) = grid_factors(procs);
        let t = dense_task_time(&task.with_procs(procs), &machine);
        println!("{procs:>5} {:>9} {t:>12.6}", format!("{r}x{c}"));
    }
}
