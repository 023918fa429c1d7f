//! Strong scaling of the interposer under the three strategies.
//!
//! Run with `cargo run --release --example strategy_comparison`.

use bemsched::scenarios::gen_interposer;
use bemsched::{simulate, StrategyKind};

fn main() -> bemsched::Result<()> {
    let s = gen_interposer();
    println!("{:>4} {:>12} {:>12} {:>12}   cage P_i", "P", "proposed", "any-pi", "no-redist");
    for &p in &s.procs_list {
        let r: Vec<_> = StrategyKind::ALL
            .iter()
            .map(|&k| simulate(&s, k, p))
            .collect::<Result<_, _>>()?;
        println!(
            "{p:>4} {:>12.4e} {:>12.4e} {:>12.4e}   {} / {}",
            r[0].t_matvec_avg, r[1].t_matvec_avg, r[2].t_matvec_avg, r[0].task_procs[0], r[1].task_procs[0]
        );
    }
    Ok(())
}
