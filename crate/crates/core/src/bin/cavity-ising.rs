use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cavity_ising::experiments::{
    resolve_jz, run_cluster, run_comparison, run_sweep, sweep_table, ClusterRequest, RunReport, ScenarioConfig,
    SweepAxis,
};
use cavity_ising::model::{Boundary, JzConvention};
use cavity_ising::{Error, Result};

#[derive(Parser)]
#[command(name = "cavity-ising", version, about = "Driven atoms in coupled microcavities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve full and effective models and write CSV/JSON output.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_json: Option<PathBuf>,
    },
    /// Full against effective model; prints the discrepancy table.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
    /// Generate and verify an N-qubit cluster state.
    Cluster {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "periodic")]
        boundary: Boundary,
        /// GHz.
        #[arg(long, allow_negative_numbers = true)]
        jz: Option<f64>,
        /// Also evolve the full atom-cavity ring (N ≤ 3).
        #[arg(long)]
        full_model: bool,
        #[arg(long)]
        out_json: Option<PathBuf>,
    },
    /// Repeat the comparison over one parameter axis.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Omega, g, Jc or detuning.
        #[arg(long)]
        axis: SweepAxis,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        values: Vec<f64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out_json: Option<PathBuf>,
    },
    /// Effective spin-spin coupling of a configuration.
    Jz {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        convention: Option<JzConvention>,
    },
}

fn print_comparison(report: &RunReport) {
    println!("J_z = {:.6e} GHz ({})", report.coupling.jz, report.coupling.convention);
    println!(
        "{:<20} {:>14} {:>14} {:>12}",
        "channel", "max_abs_diff", "max_rel_diff", "t_max [ns]"
    );
    for (name, d) in &report.comparison {
        println!(
            "{:<20} {:>14.6e} {:>14.6e} {:>12.2}",
            name, d.max_abs_diff, d.max_rel_diff, d.time_of_max_rel
        );
    }
    let c = &report.convergence;
    println!(
        "Fock cutoff {} -> {}: max change {:.3e} on {} ({})",
        c.n_max,
        c.n_max_check,
        c.max_change,
        c.channel,
        if c.passed { "converged" } else { "NOT converged" }
    );
    for n in &report.notes {
        println!("note: {n}");
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate {
            config,
            out_csv,
            out_json,
        } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            if out_csv.is_some() {
                cfg.output.csv_path = out_csv;
            }
            if out_json.is_some() {
                cfg.output.json_path = out_json;
            }
            let report = run_comparison(&cfg)?;
            report.write_outputs()?;
            if cfg.output.csv_path.is_none() {
                print!("{}", report.comparison_table()?.to_csv_string()?);
            }
            eprintln!("finished in {:.2} s", report.duration.as_secs_f64());
            report.convergence.into_result().map(|_| ())
        }
        Command::Compare { config } => {
            let report = run_comparison(&ScenarioConfig::load(&config)?)?;
            print_comparison(&report);
            report.convergence.into_result().map(|_| ())
        }
        Command::Cluster {
            n,
            boundary,
            jz,
            full_model,
            out_json,
        } => {
            let mut req = ClusterRequest::new(n, boundary);
            req.jz = jz;
            req.full_model = full_model;
            req.json_path = out_json;
            let r = run_cluster(&req)?;
            println!(
                "N = {} ({}), J_z = {:.6e} GHz, gate time {:.2} ns",
                r.n, r.boundary, r.jz, r.gate_time_ns
            );
            println!("generation fidelity {:.12}", r.generation_fidelity);
            let e: Vec<String> = r.single_qubit_entropies.iter().map(|x| format!("{x:.6}")).collect();
            println!("single-qubit entropies [{}]", e.join(", "));
            let s: Vec<String> = r.stabilizers.expectations.iter().map(|x| format!("{x:+.9}")).collect();
            println!("stabilizers after z corrections [{}]", s.join(", "));
            if let Some(lu) = &r.lu_verification {
                println!(
                    "local-unitary fidelity with the canonical cluster state {:.12}",
                    lu.fidelity
                );
            }
            if let Some(g) = &r.ghz {
                println!("GHZ equivalent: {} (fidelity {:.12})", g.equivalent, g.fidelity);
            }
            if let Some(f) = r.pair_fidelity {
                println!("fidelity with (|dn,-> + |up,+>)/sqrt2: {f:.12}");
            }
            if let Some(f) = &r.full_model {
                println!(
                    "full model (n_max = {}): fidelity {:.6} at theta = {:.4}",
                    f.params.n_max, f.fidelity, f.theta
                );
            }
            for n in &r.notes {
                println!("note: {n}");
            }
            Ok(())
        }
        Command::Sweep {
            config,
            axis,
            values,
            workers,
            out_json,
        } => {
            let cfg = ScenarioConfig::load(&config)?;
            let points = run_sweep(&cfg, axis, &values, workers)?;
            print!("{}", sweep_table(axis, &points));
            if let Some(p) = out_json {
                let doc = serde_json::to_string_pretty(&points)?;
                std::fs::write(&p, doc).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            }
            Ok(())
        }
        Command::Jz { config, convention } => {
            let cfg = ScenarioConfig::load(&config)?;
            let c = resolve_jz(&cfg.params, convention.unwrap_or(cfg.jz_convention))?;
            if let Some(j) = c.paper_literal {
                println!("paper_literal {j:.6e} GHz");
            }
            if let Some(j) = c.normalized {
                println!("normalized    {j:.6e} GHz");
            }
            if let Some(cal) = &c.calibration {
                println!(
                    "calibrated    {:.6e} GHz (h = {:.6e} GHz, residual {:.2e} rad, window {:.0} ns)",
                    cal.jz, cal.single_site_shift, cal.residual_rms, cal.window_ns
                );
            }
            println!("using {} J_z = {:.6e} GHz", c.convention, c.jz);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
