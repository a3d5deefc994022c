//! Time evolution: exact propagators, midpoint stepping for time-dependent
//! Hamiltonians, sampled observables and run comparison.

mod compare;
mod evolve;
mod propagator;
mod series;

pub use compare::{compare_channels, compare_runs, Discrepancy, RELATIVE_FLOOR};
pub use evolve::{
    default_step_dt, evolve, evolve_with, final_state, EvolutionSpec, HamiltonianSource, Method, Observable,
    ObservableKind, DEFAULT_TOLERANCE, NORM_ABORT_THRESHOLD, RENORMALIZE_THRESHOLD,
};
pub use propagator::{expm, propagator, Spectral};
pub use series::TimeSeries;
