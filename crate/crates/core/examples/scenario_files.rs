//! Writing a scenario file, reading it back and producing a sweep CSV.
//!
//! Run with `cargo run --example scenario_files`.

use bemsched::cli::format::{scenario_from_json, scenario_to_json, sweep_csv};
use bemsched::cli::run_sweep;
use bemsched::scenarios::gen_bus;
use bemsched::StrategyKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut scenario = gen_bus(2)?;
    scenario.machine.t_work = 2e-9;
    let text = scenario_to_json(&scenario);
    println!("{}", &text[..text.find("\"objects\"").unwrap()]);

    let back = scenario_from_json(&text)??;
    assert_eq!(back, scenario);

    let reports = run_sweep(&back, &[4, 8, 16], &StrategyKind::ALL)?;
    print!("{}", sweep_csv(&reports)?);
    Ok(())
}
