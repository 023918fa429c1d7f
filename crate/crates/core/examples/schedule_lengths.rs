//! Normalized schedule lengths of the restricted and unrestricted
//! algorithms across processor counts.
//!
//! Run with `cargo run --release --example schedule_lengths`.

use bemsched::part_schedule;
use bemsched::scenarios::{gen_interposer, gen_srr};
use bemsched::sched::ideal_length;

fn main() -> bemsched::Result<()> {
    for s in [gen_interposer(), gen_srr(None)?] {
        let tasks = s.tasks();
        println!("{}", s.name);
        for p in (100..=1000).step_by(100) {
            let ideal = ideal_length(&tasks, p)?;
            let modified = part_schedule(&tasks, p, Some(20))?;
            let original = part_schedule(&tasks, p, None)?;
            println!(
                "  P={p:>4}  restricted {:.4}  unrestricted {:.4}",
                modified.c_max.ratio_to(&ideal),
                original.c_max.ratio_to(&ideal)
            );
        }
    }
    Ok(())
}
