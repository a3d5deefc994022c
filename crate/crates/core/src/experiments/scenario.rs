use std::f64::consts::PI;
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::channels::{hadamard_all, Channel};
use super::config::{EvolutionConfig, InitialState, ScenarioConfig};
use crate::dynamics::{
    compare_runs, default_step_dt, evolve, Discrepancy, EvolutionSpec, HamiltonianSource, Method, TimeSeries,
};
use crate::error::{Error, Result};
use crate::hilbert::{local, CVector, LinearOp, QuantumState, SpaceLayout};
use crate::model::{
    build_ising_hamiltonian, build_rotating_hamiltonian, calibrate_jz, dispersive_ratio, effective_jz, full_layout,
    Calibration, CalibrationOptions, FourierNormalization, JzConvention, ModelParams,
};

/// Largest change a tracked observable may show when `n_max` grows by 2.
pub const CONVERGENCE_LIMIT: f64 = 1e-4;

/// The coupling used by the effective model and the frame the full model is
/// read out in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedCoupling {
    pub convention: JzConvention,
    /// GHz.
    pub jz: f64,
    /// Shift h added to Ω in the readout frame (GHz); zero unless calibrated.
    pub readout_shift: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibration: Option<Calibration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_literal: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<f64>,
}

pub fn resolve_jz(params: &ModelParams, convention: JzConvention) -> Result<ResolvedCoupling> {
    let paper_literal = effective_jz(params, FourierNormalization::PaperLiteral).ok();
    let normalized = effective_jz(params, FourierNormalization::Normalized).ok();
    let analytic = |v: Option<f64>| -> Result<f64> {
        match v {
            Some(j) => Ok(j),
            // surface the underlying reason (open boundary, resonance, ...)
            None => effective_jz(params, FourierNormalization::Normalized),
        }
    };
    let (jz, readout_shift, calibration) = match convention {
        JzConvention::PaperLiteral => (analytic(paper_literal)?, 0.0, None),
        JzConvention::Normalized => (analytic(normalized)?, 0.0, None),
        JzConvention::Calibrated => {
            let c = calibrate_jz(params, &CalibrationOptions::default())?;
            (c.jz, c.single_site_shift, Some(c))
        }
    };
    Ok(ResolvedCoupling {
        convention,
        jz,
        readout_shift,
        calibration,
        paper_literal,
        normalized,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCheck {
    pub n_max: usize,
    pub n_max_check: usize,
    /// Channel with the largest change.
    pub channel: String,
    pub max_change: f64,
    pub limit: f64,
    pub passed: bool,
}

impl ConvergenceCheck {
    pub fn into_result(self) -> Result<Self> {
        if self.passed {
            Ok(self)
        } else {
            Err(Error::Convergence {
                n_max: self.n_max,
                channel: self.channel,
                change: self.max_change,
                limit: self.limit,
            })
        }
    }
}

/// Full model against effective model on one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ScenarioConfig,
    pub coupling: ResolvedCoupling,
    pub full: TimeSeries,
    pub effective: TimeSeries,
    /// Effective against full, per channel present in both.
    pub comparison: IndexMap<String, Discrepancy>,
    pub convergence: ConvergenceCheck,
    /// False when the Fock-cutoff check failed.
    pub valid: bool,
    pub notes: Vec<String>,
    /// Wall-clock time; never written to data files.
    #[serde(skip)]
    pub duration: Duration,
}

impl RunReport {
    /// `time_ns` then `<stem>_full`, `<stem>_eff` per channel.
    pub fn comparison_table(&self) -> Result<TimeSeries> {
        let mut table = TimeSeries::new(self.full.times.clone());
        for ch in self.config.parsed_channels()? {
            let name = ch.to_string();
            let stem = ch.column_stem();
            table.insert(format!("{stem}_full"), self.full.channel(&name)?.to_vec())?;
            if let Ok(eff) = self.effective.channel(&name) {
                table.insert(format!("{stem}_eff"), eff.to_vec())?;
            }
        }
        Ok(table)
    }

    pub fn discrepancy(&self, channel: &str) -> Result<&Discrepancy> {
        self.comparison
            .get(channel)
            .ok_or_else(|| Error::MissingChannel(channel.to_string()))
    }

    /// Writes the comparison CSV and the JSON report where configured.
    pub fn write_outputs(&self) -> Result<()> {
        if let Some(p) = &self.config.output.csv_path {
            self.comparison_table()?.save_csv(p)?;
        }
        if let Some(p) = &self.config.output.json_path {
            let doc = serde_json::to_string_pretty(self)?;
            std::fs::write(p, doc).map_err(|e| Error::io(p, e))?;
        }
        Ok(())
    }
}

struct Grid {
    t_start: f64,
    t_end: f64,
    samples: usize,
    method: Method,
    step_dt: Option<f64>,
    tolerance: f64,
}

impl Grid {
    fn new(e: &EvolutionConfig, jz: f64, rabi: f64) -> Result<Self> {
        let t_end = match e.t_end {
            Some(t) => t,
            None if jz != 0.0 => e.t_start + PI / jz.abs(),
            None => return Err(Error::Config("J_z is zero; set evolution.t_end".into())),
        };
        let step_dt = match e.method {
            Method::Stepped => Some(e.step_dt.unwrap_or_else(|| default_step_dt(rabi))),
            Method::ExactExpm => None,
        };
        Ok(Self {
            t_start: e.t_start,
            t_end,
            samples: e.sample_count,
            method: e.method,
            step_dt,
            tolerance: e.tolerance,
        })
    }

    fn spec<'a>(&self, h: LinearOp) -> EvolutionSpec<'a> {
        EvolutionSpec {
            hamiltonian: HamiltonianSource::Fixed(h),
            t_start: self.t_start,
            t_end: self.t_end,
            sample_count: self.samples,
            method: self.method,
            step_dt: self.step_dt,
            tolerance: self.tolerance,
            frame: None,
        }
    }
}

/// Rotating-frame evolution of `atoms ⊗ vacuum`, read out in the frame
/// rotating with the dressed splitting `Ω + shift`.
fn run_full(
    params: &ModelParams,
    channels: &[Channel],
    atomic: &CVector,
    shift: f64,
    grid: &Grid,
) -> Result<TimeSeries> {
    let layout = full_layout(params)?;
    let mode_dim = layout.total_dim() >> params.sites;
    let mut amps = CVector::zeros(layout.total_dim());
    for (config, a) in atomic.iter().enumerate() {
        amps[config * mode_dim] = *a;
    }
    let initial = QuantumState::new(layout.clone(), amps)?;
    let mut frame = LinearOp::zeros(&layout);
    for j in 0..params.sites {
        frame = frame.try_add(&LinearOp::embed_local(&layout, j, &local::sigma_x())?)?;
    }
    let frame = frame.scale_real(params.rabi + shift);
    let observables = channels
        .iter()
        .map(|c| c.observable(params.sites, Some(params.n_max), params.boundary))
        .collect::<Result<Vec<_>>>()?;
    let spec = grid.spec(build_rotating_hamiltonian(params)?).with_frame(frame);
    evolve(&initial, &spec, &observables)
}

/// `J_z Σ σᶻσᶻ` written in the bare atomic basis, evolved from `atomic`.
fn run_effective(
    params: &ModelParams,
    channels: &[Channel],
    atomic: &CVector,
    jz: f64,
    grid: &Grid,
) -> Result<TimeSeries> {
    let n = params.sites;
    let layout = SpaceLayout::qubits(n);
    let w = hadamard_all(n);
    let ising = build_ising_hamiltonian(n, jz, params.boundary)?;
    let h = LinearOp::new(layout.clone(), &w * ising.matrix() * &w)?;
    let initial = QuantumState::new(layout, atomic.clone())?;
    let observables = channels
        .iter()
        .filter(|c| c.in_effective_model())
        .map(|c| c.observable(n, None, params.boundary))
        .collect::<Result<Vec<_>>>()?;
    evolve(&initial, &grid.spec(h), &observables)
}

/// Evolves the full and effective models on one grid and compares them. A
/// failed Fock-cutoff check marks the report invalid but is not an error.
pub fn run_comparison(config: &ScenarioConfig) -> Result<RunReport> {
    let started = Instant::now();
    config.validate()?;
    let params = &config.params;
    let channels = config.parsed_channels()?;
    let atomic = config.initial_state.atomic_amplitudes(params.sites)?;
    let coupling = resolve_jz(params, config.jz_convention)?;
    let grid = Grid::new(&config.evolution, coupling.jz, params.rabi)?;

    let full = run_full(params, &channels, &atomic, coupling.readout_shift, &grid)?;
    let effective = run_effective(params, &channels, &atomic, coupling.jz, &grid)?;
    let mut comparison = IndexMap::new();
    for ch in channels.iter().filter(|c| c.in_effective_model()) {
        let name = ch.to_string();
        comparison.insert(name.clone(), compare_runs(&effective, &full, &name)?);
    }

    let bigger = ModelParams {
        n_max: params.n_max + 2,
        ..params.clone()
    };
    let check = run_full(&bigger, &channels, &atomic, coupling.readout_shift, &grid)?;
    let mut convergence = ConvergenceCheck {
        n_max: params.n_max,
        n_max_check: bigger.n_max,
        channel: String::new(),
        max_change: 0.0,
        limit: CONVERGENCE_LIMIT,
        passed: true,
    };
    for (name, values) in &full.channels {
        let other = check.channel(name)?;
        let change = values.iter().zip(other).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if change >= convergence.max_change {
            convergence.max_change = change;
            convergence.channel = name.clone();
        }
    }
    convergence.passed = convergence.max_change < CONVERGENCE_LIMIT;

    let mut notes = Vec::new();
    if let Ok(r) = dispersive_ratio(params) {
        notes.push(format!("max g/|delta_k| = {r:.4}"));
    }
    if let Some(c) = &coupling.calibration {
        notes.push(format!(
            "calibrated J_z = {:.6e} GHz, single-site shift h = {:.6e} GHz (readout frame Omega + h), fit residual {:.2e} rad over {:.0} ns",
            c.jz, c.single_site_shift, c.residual_rms, c.window_ns
        ));
    }
    for (label, v) in [
        ("paper_literal", coupling.paper_literal),
        ("normalized", coupling.normalized),
    ] {
        if let Some(j) = v {
            notes.push(format!("{label} J_z = {j:.6e} GHz"));
        }
    }
    if full.renormalizations > 0 {
        notes.push(format!("state renormalized at {} samples", full.renormalizations));
    }

    Ok(RunReport {
        config: config.clone(),
        coupling,
        full,
        effective,
        comparison,
        valid: convergence.passed,
        convergence,
        notes,
        duration: started.elapsed(),
    })
}

/// The two-cavity reproduction: `|g g⟩ ⊗ vacuum` over one phase-gate period.
/// Fails when the Fock cutoff is not converged.
pub fn run_fig2(config: &ScenarioConfig) -> Result<RunReport> {
    if config.params.sites != 2 {
        return Err(Error::Config(format!(
            "run_fig2 needs N = 2, got {}",
            config.params.sites
        )));
    }
    if config.initial_state != InitialState::AllGroundVacuum {
        return Err(Error::Config("run_fig2 starts from all_ground_vacuum".into()));
    }
    let report = run_comparison(config)?;
    report.convergence.clone().into_result()?;
    Ok(report)
}
