//! Reproducible scenarios: the two-cavity full-vs-effective comparison,
//! cluster-state generation runs and parameter sweeps, with CSV/JSON output.

mod channels;
mod cluster_run;
mod config;
mod scenario;
mod sweep;

pub use channels::{parse_channels, Channel, TargetPreset};
pub use cluster_run::{
    entangled_pair, full_model_check, run_cluster, ClusterReport, ClusterRequest, FullModelCheck, SizeLimits,
};
pub use config::{EvolutionConfig, InitialState, OutputPaths, ScenarioConfig};
pub use scenario::{
    resolve_jz, run_comparison, run_fig2, ConvergenceCheck, ResolvedCoupling, RunReport, CONVERGENCE_LIMIT,
};
pub use sweep::{run_sweep, sweep_table, SweepAxis, SweepPoint, SweepSummary};
