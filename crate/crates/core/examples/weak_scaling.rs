//! Weak scaling on the bus family: processes grow with the conductor count.
//!
//! Run with `cargo run --release --example weak_scaling`.

use bemsched::scenarios::{gen_bus, BUS_ITERATIONS};
use bemsched::{simulate, StrategyKind};

fn main() -> bemsched::Result<()> {
    println!("{:>5} {:>5} {:>12} {:>12} {:>12}", "pairs", "P", "internal", "t_matvec", "t_solve");
    for (pairs, _) in BUS_ITERATIONS {
        let s = gen_bus(pairs)?;
        let p = s.procs_list[0];
        let r = simulate(&s, StrategyKind::Proposed, p)?;
        println!(
            "{pairs:>5} {p:>5} {:>12.4e} {:>12.4e} {:>12.4e}",
            r.internal_makespan, r.t_matvec_avg, r.t_solve_total
        );
    }
    Ok(())
}
