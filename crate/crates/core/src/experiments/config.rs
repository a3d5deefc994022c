use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::channels::{parse_channels, Channel};
use crate::dynamics::{Method, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::hilbert::{CVector, C64};
use crate::model::{JzConvention, ModelParams};

/// Atomic starting state; the cavities always start in the vacuum.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    /// Every atom in `|g⟩`.
    #[default]
    AllGroundVacuum,
    /// `2^N` amplitudes `[re, im]` over the bare atomic basis (g = 0, e = 1,
    /// first atom most significant). Normalized on use.
    Custom(Vec<[f64; 2]>),
}

impl InitialState {
    /// Bare-basis atomic amplitudes.
    pub fn atomic_amplitudes(&self, atoms: usize) -> Result<CVector> {
        let dim = 1usize << atoms;
        let v = match self {
            InitialState::AllGroundVacuum => {
                let mut v = CVector::zeros(dim);
                v[0] = C64::new(1.0, 0.0);
                v
            }
            InitialState::Custom(amps) => {
                if amps.len() != dim {
                    return Err(Error::Config(format!(
                        "custom initial state needs {dim} amplitudes, got {}",
                        amps.len()
                    )));
                }
                CVector::from_iterator(dim, amps.iter().map(|[re, im]| C64::new(*re, *im)))
            }
        };
        let norm = v.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Config("initial state has zero or non-finite norm".into()));
        }
        Ok(v / C64::new(norm, 0.0))
    }
}

fn default_samples() -> usize {
    400
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

/// Time grid and integrator. Times in ns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionConfig {
    #[serde(default)]
    pub t_start: f64,
    /// Defaults to one phase-gate period `π/|J_z|`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default = "default_samples")]
    pub sample_count: usize,
    #[serde(default)]
    pub method: Method,
    /// Required for `stepped`; defaults to `2π/(50 Ω)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_dt: Option<f64>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            t_start: 0.0,
            t_end: None,
            sample_count: default_samples(),
            method: Method::ExactExpm,
            step_dt: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json_path: Option<PathBuf>,
}

fn default_channels() -> Vec<String> {
    vec!["p_g1g2".into(), "n_photon(1)".into(), "entropy(1)".into()]
}

/// A complete, reproducible scenario. Rates in GHz, times in ns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub params: ModelParams,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default)]
    pub evolution: EvolutionConfig,
    #[serde(default = "default_channels")]
    pub channels: Vec<String>,
    #[serde(default)]
    pub jz_convention: JzConvention,
    #[serde(default)]
    pub output: OutputPaths,
}

impl ScenarioConfig {
    /// The two-cavity reference scenario with default channels.
    pub fn fig2() -> Self {
        Self {
            params: ModelParams::fig2(),
            initial_state: InitialState::AllGroundVacuum,
            evolution: EvolutionConfig::default(),
            channels: default_channels(),
            jz_convention: JzConvention::Calibrated,
            output: OutputPaths::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.parsed_channels()?;
        self.initial_state.atomic_amplitudes(self.params.sites)?;
        let e = &self.evolution;
        if e.sample_count < 2 {
            return Err(Error::Config("evolution.sample_count must be >= 2".into()));
        }
        if let Some(t_end) = e.t_end {
            if !(t_end > e.t_start) {
                return Err(Error::Config("evolution.t_end must exceed t_start".into()));
            }
        }
        if matches!(e.step_dt, Some(dt) if !(dt > 0.0)) {
            return Err(Error::Config("evolution.step_dt must be positive".into()));
        }
        Ok(())
    }

    pub fn parsed_channels(&self) -> Result<Vec<Channel>> {
        let channels = parse_channels(&self.channels)?;
        if channels.is_empty() {
            return Err(Error::Config("at least one channel is required".into()));
        }
        Ok(channels)
    }

    pub fn from_json(doc: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(doc).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let doc = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_fills_defaults() {
        let doc = r#"{"params": {"N": 2, "omega0": 10, "omega_c": 11, "omega_L": 10,
                     "g": 0.1, "Omega": 50, "Jc": 0.02, "n_max": 3, "boundary": "periodic"}}"#;
        let cfg = ScenarioConfig::from_json(doc).unwrap();
        assert_eq!(cfg, ScenarioConfig::fig2());
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        let mut v = serde_json::to_value(ScenarioConfig::fig2()).unwrap();
        v["params"]["Delta"] = 1.0.into();
        let e = ScenarioConfig::from_json(&v.to_string()).unwrap_err();
        assert!(matches!(e, Error::Config(_)));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn custom_initial_state() {
        let mut cfg = ScenarioConfig::fig2();
        cfg.initial_state = InitialState::Custom(vec![[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]]);
        let json = cfg.to_json().unwrap();
        assert!(json.contains("\"custom\""));
        let back = ScenarioConfig::from_json(&json).unwrap();
        let v = back.initial_state.atomic_amplitudes(2).unwrap();
        assert!((v[1].im - 0.5f64.sqrt()).abs() < 1e-15);
        cfg.initial_state = InitialState::Custom(vec![[1.0, 0.0]]);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn bad_channel_rejected() {
        let mut cfg = ScenarioConfig::fig2();
        cfg.channels.push("purity(1)".into());
        assert!(matches!(cfg.validate(), Err(Error::UnknownChannel(_))));
    }
}
