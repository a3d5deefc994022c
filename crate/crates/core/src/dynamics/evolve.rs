use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Spectral, TimeSeries};
use crate::error::{Error, Result};
use crate::hilbert::{entanglement_entropy, LinearOp, QuantumState};

/// Norm deviation above which the state is renormalized (and the event counted).
pub const RENORMALIZE_THRESHOLD: f64 = 1e-9;
/// Norm deviation that aborts a run.
pub const NORM_ABORT_THRESHOLD: f64 = 1e-6;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Step that resolves a drive of Rabi frequency `rabi` with 50 steps per period.
pub fn default_step_dt(rabi: f64) -> f64 {
    2.0 * PI / (50.0 * rabi)
}

type Builder<'a> = dyn Fn(f64) -> Result<LinearOp> + Send + Sync + 'a;

pub enum HamiltonianSource<'a> {
    Fixed(LinearOp),
    /// `H(t)` rebuilt at every step midpoint.
    TimeDependent(Box<Builder<'a>>),
}

impl fmt::Debug for HamiltonianSource<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HamiltonianSource::Fixed(h) => write!(f, "Fixed(dim {})", h.dim()),
            HamiltonianSource::TimeDependent(_) => f.write_str("TimeDependent(..)"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    ExactExpm,
    Stepped,
}

/// A trajectory request: Hamiltonian, uniform sample grid and integration
/// method. Times in ns.
#[derive(Debug)]
pub struct EvolutionSpec<'a> {
    pub hamiltonian: HamiltonianSource<'a>,
    pub t_start: f64,
    pub t_end: f64,
    pub sample_count: usize,
    pub method: Method,
    /// Substep length for [`Method::Stepped`].
    pub step_dt: Option<f64>,
    /// Allowed relative drift of ⟨H⟩ for time-independent sources.
    pub tolerance: f64,
    /// Optional Hermitian generator `G`; observables see `e^{iGt} ψ(t)`.
    pub frame: Option<LinearOp>,
}

impl<'a> EvolutionSpec<'a> {
    pub fn exact(h: LinearOp, t_end: f64, sample_count: usize) -> Self {
        Self {
            hamiltonian: HamiltonianSource::Fixed(h),
            t_start: 0.0,
            t_end,
            sample_count,
            method: Method::ExactExpm,
            step_dt: None,
            tolerance: DEFAULT_TOLERANCE,
            frame: None,
        }
    }

    pub fn stepped(source: HamiltonianSource<'a>, t_end: f64, sample_count: usize, step_dt: f64) -> Self {
        Self {
            hamiltonian: source,
            t_start: 0.0,
            t_end,
            sample_count,
            method: Method::Stepped,
            step_dt: Some(step_dt),
            tolerance: DEFAULT_TOLERANCE,
            frame: None,
        }
    }

    pub fn with_frame(mut self, generator: LinearOp) -> Self {
        self.frame = Some(generator);
        self
    }

    pub fn times(&self) -> Vec<f64> {
        let n = self.sample_count;
        let span = self.t_end - self.t_start;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.t_end
                } else {
                    self.t_start + span * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidEvolution(m));
        if !(self.t_start.is_finite() && self.t_end.is_finite()) || self.t_end <= self.t_start {
            return bad(format!("need t_end > t_start, got [{}, {}]", self.t_start, self.t_end));
        }
        if self.sample_count < 2 {
            return bad(format!("sample_count must be >= 2, got {}", self.sample_count));
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive".into());
        }
        match (self.method, &self.hamiltonian) {
            (Method::ExactExpm, HamiltonianSource::TimeDependent(_)) => {
                return bad("exact_expm needs a time-independent Hamiltonian".into())
            }
            (Method::Stepped, _) => match self.step_dt {
                Some(dt) if dt > 0.0 && dt <= self.t_end - self.t_start => {}
                Some(dt) => return bad(format!("step_dt {dt} outside (0, t_end - t_start]")),
                None => return bad("stepped evolution needs step_dt".into()),
            },
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum ObservableKind {
    /// Real part of ⟨ψ|O|ψ⟩.
    Expectation(LinearOp),
    /// Von Neumann entropy (bits) of the listed factors.
    Entropy(Vec<usize>),
    /// |⟨target|ψ⟩|².
    Fidelity(QuantumState),
}

/// A named extractor evaluated at every sample.
#[derive(Debug, Clone)]
pub struct Observable {
    pub name: String,
    pub kind: ObservableKind,
}

impl Observable {
    pub fn expectation(name: impl Into<String>, op: LinearOp) -> Self {
        Self {
            name: name.into(),
            kind: ObservableKind::Expectation(op),
        }
    }

    pub fn entropy(name: impl Into<String>, keep: Vec<usize>) -> Self {
        Self {
            name: name.into(),
            kind: ObservableKind::Entropy(keep),
        }
    }

    pub fn fidelity(name: impl Into<String>, target: QuantumState) -> Self {
        Self {
            name: name.into(),
            kind: ObservableKind::Fidelity(target),
        }
    }

    pub fn evaluate(&self, state: &QuantumState) -> Result<f64> {
        match &self.kind {
            ObservableKind::Expectation(op) if op.flags().diagonal => {
                if op.dim() != state.amplitudes().len() {
                    return Err(Error::LayoutMismatch);
                }
                Ok(op
                    .diagonal()
                    .iter()
                    .zip(state.amplitudes().iter())
                    .map(|(d, a)| d.re * a.norm_sqr())
                    .sum())
            }
            ObservableKind::Expectation(op) => Ok(state.expectation(op)?.re),
            ObservableKind::Entropy(keep) => entanglement_entropy(state, keep),
            ObservableKind::Fidelity(target) => Ok(target.inner(state)?.norm_sqr()),
        }
    }
}

/// Walks the sample grid, handing each (time, readout-frame state) to `visit`.
/// Returns the number of renormalization events.
pub fn evolve_with<F>(initial: &QuantumState, spec: &EvolutionSpec<'_>, mut visit: F) -> Result<usize>
where
    F: FnMut(f64, &QuantumState) -> Result<()>,
{
    spec.validate()?;
    let frame = spec.frame.as_ref().map(Spectral::new).transpose()?;
    let layout = initial.layout().clone();
    let times = spec.times();
    let mut renormalizations = 0;

    let energy_check = match &spec.hamiltonian {
        HamiltonianSource::Fixed(h) => Some((h, initial.expectation(h)?.re)),
        HamiltonianSource::TimeDependent(_) => None,
    };

    let mut emit = |t: f64, state: &mut QuantumState| -> Result<()> {
        let drift = (state.norm_squared() - 1.0).abs();
        if drift > NORM_ABORT_THRESHOLD {
            return Err(Error::NormDrift {
                norm: state.norm_squared(),
                time: t,
            });
        }
        if drift > RENORMALIZE_THRESHOLD {
            state.renormalize();
            renormalizations += 1;
        }
        if let Some((h, e0)) = energy_check {
            let e = state.expectation(h)?.re;
            if (e - e0).abs() > spec.tolerance * e0.abs().max(1.0) {
                return Err(Error::InvalidEvolution(format!(
                    "energy drifted from {e0} to {e} at t = {t} ns"
                )));
            }
        }
        match &frame {
            Some(g) => {
                let read = QuantumState::from_raw(layout.clone(), g.evolve(state.amplitudes(), -t));
                visit(t, &read)
            }
            None => visit(t, state),
        }
    };

    match (&spec.hamiltonian, spec.method) {
        (HamiltonianSource::Fixed(h), Method::ExactExpm) => {
            let spectral = Spectral::new(h)?;
            for &t in &times {
                let psi = spectral.evolve(initial.amplitudes(), t - spec.t_start);
                emit(t, &mut QuantumState::from_raw(layout.clone(), psi))?;
            }
        }
        (source, _) => {
            let dt = spec.step_dt.expect("validated");
            let fixed = match source {
                HamiltonianSource::Fixed(h) => Some(Spectral::new(h)?),
                HamiltonianSource::TimeDependent(_) => None,
            };
            let mut state = initial.clone();
            emit(times[0], &mut state)?;
            for w in times.windows(2) {
                let (a, b) = (w[0], w[1]);
                let substeps = (((b - a) / dt) - 1e-9).ceil().max(1.0) as usize;
                let h = (b - a) / substeps as f64;
                let mut psi = state.into_amplitudes();
                for s in 0..substeps {
                    psi = match (&fixed, source) {
                        (Some(sp), _) => sp.evolve(&psi, h),
                        (None, HamiltonianSource::TimeDependent(build)) => {
                            let mid = a + (s as f64 + 0.5) * h;
                            Spectral::new(&build(mid)?)?.evolve(&psi, h)
                        }
                        (None, HamiltonianSource::Fixed(_)) => unreachable!(),
                    };
                }
                state = QuantumState::from_raw(layout.clone(), psi);
                emit(b, &mut state)?;
            }
        }
    }
    Ok(renormalizations)
}

/// Samples every observable on the grid of `spec`.
pub fn evolve(initial: &QuantumState, spec: &EvolutionSpec<'_>, observables: &[Observable]) -> Result<TimeSeries> {
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(spec.sample_count); observables.len()];
    let renormalizations = evolve_with(initial, spec, |_, state| {
        for (col, obs) in columns.iter_mut().zip(observables) {
            col.push(obs.evaluate(state)?);
        }
        Ok(())
    })?;
    let mut series = TimeSeries::new(spec.times());
    series.renormalizations = renormalizations;
    for (obs, col) in observables.iter().zip(columns) {
        series.insert(obs.name.clone(), col)?;
    }
    Ok(series)
}

/// State at the last grid point.
pub fn final_state(initial: &QuantumState, spec: &EvolutionSpec<'_>) -> Result<QuantumState> {
    let mut last = None;
    evolve_with(initial, spec, |_, s| {
        last = Some(s.clone());
        Ok(())
    })?;
    Ok(last.expect("grid has at least two samples"))
}
