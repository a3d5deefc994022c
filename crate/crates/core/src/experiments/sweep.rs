use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ScenarioConfig;
use super::scenario::run_comparison;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    /// Rabi frequency Ω.
    Omega,
    /// Atom-cavity coupling g.
    #[serde(rename = "g")]
    G,
    /// Photon hopping J_c.
    Jc,
    /// Cavity detuning ω_c − ω_L.
    #[serde(rename = "detuning")]
    Detuning,
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Omega" => Ok(SweepAxis::Omega),
            "g" => Ok(SweepAxis::G),
            "Jc" => Ok(SweepAxis::Jc),
            "detuning" => Ok(SweepAxis::Detuning),
            other => Err(Error::Config(format!(
                "sweep axis must be Omega, g, Jc or detuning, got '{other}'"
            ))),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::Omega => "Omega",
            SweepAxis::G => "g",
            SweepAxis::Jc => "Jc",
            SweepAxis::Detuning => "detuning",
        })
    }
}

impl SweepAxis {
    pub fn apply(self, base: &ScenarioConfig, value: f64) -> ScenarioConfig {
        let mut cfg = base.clone();
        let p = &mut cfg.params;
        match self {
            SweepAxis::Omega => p.rabi = value,
            SweepAxis::G => p.g = value,
            SweepAxis::Jc => p.hopping = value,
            SweepAxis::Detuning => p.omega_c = p.omega_l + value,
        }
        cfg
    }

    fn check(self, value: f64) -> Result<()> {
        let ok = value.is_finite()
            && match self {
                SweepAxis::Omega | SweepAxis::G => value > 0.0,
                SweepAxis::Jc => value >= 0.0,
                SweepAxis::Detuning => value != 0.0,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid {self} value {value}")))
        }
    }
}

/// Headline numbers of one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub jz: f64,
    /// p_g1g2, effective against full.
    pub max_rel_diff: f64,
    pub max_abs_diff: f64,
    /// Largest ⟨n_1⟩ of the full model.
    pub max_photon: f64,
    pub convergence_change: f64,
    /// Fock-cutoff check passed.
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<SweepSummary>,
    /// Set when the run failed; the sweep carries on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn summarize(cfg: &ScenarioConfig) -> Result<SweepSummary> {
    let report = run_comparison(cfg)?;
    let d = report.discrepancy("p_g1g2")?;
    Ok(SweepSummary {
        jz: report.coupling.jz,
        max_rel_diff: d.max_rel_diff,
        max_abs_diff: d.max_abs_diff,
        max_photon: report.full.max_of("n_photon(1)")?,
        convergence_change: report.convergence.max_change,
        valid: report.valid,
    })
}

/// Runs the full-vs-effective comparison at every value of `axis`,
/// concurrently on up to `workers` threads. Results keep the input order.
pub fn run_sweep(
    base: &ScenarioConfig,
    axis: SweepAxis,
    values: &[f64],
    workers: Option<usize>,
) -> Result<Vec<SweepPoint>> {
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    for &v in values {
        axis.check(v)?;
    }
    let mut base = base.clone();
    base.output = Default::default();
    for needed in ["p_g1g2", "n_photon(1)"] {
        if !base.channels.iter().any(|c| c == needed) {
            base.channels.push(needed.into());
        }
    }
    base.validate()?;

    let point = |&value: &f64| match summarize(&axis.apply(&base, value)) {
        Ok(s) => SweepPoint {
            value,
            summary: Some(s),
            error: None,
        },
        Err(e) => SweepPoint {
            value,
            summary: None,
            error: Some(e.to_string()),
        },
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    Ok(pool.install(|| values.par_iter().map(point).collect()))
}

/// Plain-text table of a sweep.
pub fn sweep_table(axis: SweepAxis, points: &[SweepPoint]) -> String {
    let mut out = format!(
        "{:>12} {:>14} {:>14} {:>14} {:>12} {:>6}\n",
        axis.to_string(),
        "J_z [GHz]",
        "max_rel_diff",
        "max_abs_diff",
        "max_n_photon",
        "valid"
    );
    for p in points {
        match (&p.summary, &p.error) {
            (Some(s), _) => out.push_str(&format!(
                "{:>12} {:>14.6e} {:>14.6e} {:>14.6e} {:>12.4e} {:>6}\n",
                p.value, s.jz, s.max_rel_diff, s.max_abs_diff, s.max_photon, s.valid
            )),
            (None, Some(e)) => out.push_str(&format!("{:>12} error: {e}\n", p.value)),
            (None, None) => {}
        }
    }
    out
}
