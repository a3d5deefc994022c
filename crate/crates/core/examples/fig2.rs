//! Two driven cavities: full atom-cavity dynamics against the effective
//! Ising model over one phase-gate period. Writes the comparison CSV.
//!
//! cargo run --release --example fig2 -- [out.csv]

use std::path::PathBuf;

use cavity_ising::experiments::{run_fig2, ScenarioConfig};

fn main() -> cavity_ising::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fig2.csv"));
    let mut cfg = ScenarioConfig::fig2();
    cfg.output.csv_path = Some(out.clone());
    let report = run_fig2(&cfg)?;
    report.write_outputs()?;

    println!("J_z = {:.6e} GHz ({})", report.coupling.jz, report.coupling.convention);
    for (name, d) in &report.comparison {
        println!(
            "{name:<12} max |diff| {:.3e}   max relative {:.3e}",
            d.max_abs_diff, d.max_rel_diff
        );
    }
    println!("max <n_1> = {:.4e}", report.full.max_of("n_photon(1)")?);
    println!(
        "Fock cutoff {} -> {}: change {:.2e}",
        report.convergence.n_max, report.convergence.n_max_check, report.convergence.max_change
    );
    println!("wrote {}", out.display());
    Ok(())
}
