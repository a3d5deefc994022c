//! Validity of the effective model: full-vs-effective discrepancy as the
//! drive strength and the atom-cavity coupling vary.

use cavity_ising::experiments::{run_sweep, sweep_table, ScenarioConfig, SweepAxis};

fn main() -> cavity_ising::Result<()> {
    let base = ScenarioConfig::fig2();
    for (axis, values) in [
        (SweepAxis::Omega, vec![5.0, 10.0, 15.0, 25.0, 50.0, 100.0]),
        (SweepAxis::G, vec![0.025, 0.05, 0.1, 0.2]),
    ] {
        print!("{}", sweep_table(axis, &run_sweep(&base, axis, &values, None)?));
        println!();
    }
    Ok(())
}
