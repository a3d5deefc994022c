use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cluster::{
    apply_local_unitaries, cluster_corrections, generate_cluster_state, ghz_equivalence_check, local_corrections,
    plus_state, stabilizer_report, verify_cluster, GhzCheck, LuSearchOptions, PhaseGateSpec, StabilizerReport,
};
use crate::dynamics::{Spectral, TimeSeries};
use crate::error::{Error, Result};
use crate::hilbert::{entanglement_entropy, fidelity, partial_trace, CVector, QuantumState, SpaceLayout, C64};
use crate::model::{
    build_ising_hamiltonian, build_rotating_hamiltonian, dressed_basis_transform, effective_jz, Boundary,
    FourierNormalization, ModelParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeLimits {
    /// Effective-model qubits.
    pub max_qubits: usize,
    /// Qubits for which the local-unitary search is run.
    pub max_lu_qubits: usize,
    /// Sites for the full atom-cavity cross-check.
    pub max_full_sites: usize,
    /// Fock cutoff of the full cross-check.
    pub max_full_n_max: usize,
}

impl Default for SizeLimits {
    fn default() -> Self {
        Self {
            max_qubits: 12,
            max_lu_qubits: 4,
            max_full_sites: 3,
            max_full_n_max: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRequest {
    pub n: usize,
    pub boundary: Boundary,
    /// GHz; defaults to the normalized coupling of the two-cavity setting.
    pub jz: Option<f64>,
    /// Also evolve the full atom-cavity model (N ≤ 3, periodic).
    pub full_model: bool,
    pub limits: SizeLimits,
    pub json_path: Option<PathBuf>,
}

impl ClusterRequest {
    pub fn new(n: usize, boundary: Boundary) -> Self {
        Self {
            n,
            boundary,
            jz: None,
            full_model: false,
            limits: SizeLimits::default(),
            json_path: None,
        }
    }
}

/// Cross-check of the generated state against the full atom-cavity dynamics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullModelCheck {
    pub params: ModelParams,
    pub jz: f64,
    pub time_ns: f64,
    /// Largest ⟨ψ_θ|ρ_atoms|ψ_θ⟩ over a uniform z rotation θ of the
    /// Ising-evolved target.
    pub fidelity: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub n: usize,
    pub boundary: Boundary,
    pub jz: f64,
    /// Ising time `π/(4|J_z|)` equivalent to the phase gate at φ = π.
    pub gate_time_ns: f64,
    /// `entropy(1)` and `fidelity(generated)` along the Ising evolution.
    pub series: TimeSeries,
    /// Fidelity of the evolved, z-corrected state with `U_p(π)⊗|+⟩`.
    pub generation_fidelity: f64,
    pub single_qubit_entropies: Vec<f64>,
    /// After the analytic σᶻ corrections.
    pub stabilizers: StabilizerReport,
    /// After numerically found local unitaries (small N only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lu_verification: Option<StabilizerReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghz: Option<GhzCheck>,
    /// N = 2: fidelity with `(|↓−⟩ + |↑+⟩)/√2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_fidelity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_model: Option<FullModelCheck>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub duration: Duration,
}

fn diag_mul(v: &CVector, d: &[C64]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().zip(d).map(|(a, b)| a * b))
}

/// `(|↓⟩|−⟩ + |↑⟩|+⟩)/√2` in the dressed basis.
pub fn entangled_pair() -> QuantumState {
    let h = 0.5;
    let amps = CVector::from_vec(vec![
        C64::new(h, 0.0),
        C64::new(-h, 0.0),
        C64::new(h, 0.0),
        C64::new(h, 0.0),
    ]);
    QuantumState::new(SpaceLayout::qubits(2), amps).expect("normalized")
}

/// Generates `|ψ_N⟩` with the effective Ising model and verifies it.
pub fn run_cluster(req: &ClusterRequest) -> Result<ClusterReport> {
    let started = Instant::now();
    let n = req.n;
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 qubits, got {n}")));
    }
    if n > req.limits.max_qubits {
        return Err(Error::SizeLimit(format!(
            "N = {n} exceeds the effective-model limit of {} qubits",
            req.limits.max_qubits
        )));
    }
    if req.full_model && n > req.limits.max_full_sites {
        return Err(Error::SizeLimit(format!(
            "full-model cross-check limited to N <= {}, got {n}",
            req.limits.max_full_sites
        )));
    }
    let jz = match req.jz {
        Some(j) if j.is_finite() && j != 0.0 => j,
        Some(j) => return Err(Error::Config(format!("J_z must be finite and non-zero, got {j}"))),
        None => effective_jz(&ModelParams::fig2(), FourierNormalization::Normalized)?,
    };
    let gate_time = PI / (4.0 * jz.abs());
    let mut notes = Vec::new();

    // Ising evolution from ⊗|+⟩, then the z corrections of the phase gate
    let plus = plus_state(n);
    let layout = plus.layout().clone();
    let pi_gate = PhaseGateSpec::cluster(n, req.boundary);
    let corrections = local_corrections(&pi_gate)?.diagonal();
    let target = generate_cluster_state(n, req.boundary)?;
    let ising_diag: Vec<f64> = build_ising_hamiltonian(n, 1.0, req.boundary)?
        .diagonal()
        .iter()
        .map(|z| z.re)
        .collect();
    // U_p(π) = C · exp(−i(π/4)Σσᶻσᶻ); a negative J_z reverses the Ising sign
    let evolve_to = |t: f64| -> QuantumState {
        let phases: Vec<C64> = ising_diag
            .iter()
            .map(|e| C64::from_polar(1.0, -jz.abs() * e * t))
            .collect();
        QuantumState::from_raw(layout.clone(), diag_mul(plus.amplitudes(), &phases))
    };
    if jz < 0.0 {
        notes.push("negative J_z: generated with |J_z|; the sign only conjugates the phases".into());
    }

    let samples = 101;
    let times: Vec<f64> = (0..samples)
        .map(|i| gate_time * i as f64 / (samples - 1) as f64)
        .collect();
    let mut entropy = Vec::with_capacity(samples);
    let mut fid = Vec::with_capacity(samples);
    for &t in &times {
        let psi = evolve_to(t);
        entropy.push(entanglement_entropy(&psi, &[0])?);
        let corrected = QuantumState::from_raw(layout.clone(), diag_mul(psi.amplitudes(), &corrections));
        fid.push(fidelity(&target, &corrected)?);
    }
    let mut series = TimeSeries::new(times);
    series.insert("entropy(1)", entropy)?;
    series.insert("fidelity(generated)", fid)?;

    let generated = QuantumState::normalized(
        layout.clone(),
        diag_mul(evolve_to(gate_time).amplitudes(), &corrections),
    )?;
    let generation_fidelity = fidelity(&target, &generated)?;
    let single_qubit_entropies = (0..n)
        .map(|q| entanglement_entropy(&generated, &[q]))
        .collect::<Result<Vec<_>>>()?;
    let corrected = apply_local_unitaries(&generated, &cluster_corrections(n, req.boundary))?;
    let stabilizers = stabilizer_report(&corrected, req.boundary)?;

    let options = LuSearchOptions::default();
    let lu_verification = if n <= req.limits.max_lu_qubits {
        Some(verify_cluster(&generated, req.boundary, &options)?)
    } else {
        notes.push(format!(
            "local-unitary search skipped above {} qubits",
            req.limits.max_lu_qubits
        ));
        None
    };
    let ghz = if n == 3 {
        Some(ghz_equivalence_check(&generated, &options)?)
    } else {
        None
    };
    let pair_fidelity = if n == 2 {
        Some(fidelity(&entangled_pair(), &generated)?)
    } else {
        None
    };
    let full_model = if req.full_model {
        match req.boundary {
            Boundary::Periodic => Some(full_model_check(n, req.limits.max_full_n_max)?),
            Boundary::Open => {
                notes.push("full-model cross-check needs the periodic ring; skipped".into());
                None
            }
        }
    } else {
        None
    };

    let report = ClusterReport {
        n,
        boundary: req.boundary,
        jz,
        gate_time_ns: gate_time,
        series,
        generation_fidelity,
        single_qubit_entropies,
        stabilizers,
        lu_verification,
        ghz,
        pair_fidelity,
        full_model,
        notes,
        duration: started.elapsed(),
    };
    if let Some(p) = &req.json_path {
        let doc = serde_json::to_string_pretty(&report)?;
        std::fs::write(p, doc).map_err(|e| Error::io(p, e))?;
    }
    Ok(report)
}

/// Evolves the driven ring for the Ising gate time and compares the atomic
/// state with the Ising-evolved target, optimizing one uniform z rotation
/// (the drive and its light shift rotate every atom alike).
pub fn full_model_check(n: usize, n_max: usize) -> Result<FullModelCheck> {
    let params = ModelParams {
        sites: n,
        n_max,
        ..ModelParams::fig2()
    };
    let jz = effective_jz(&params, FourierNormalization::Normalized)?;
    let t = PI / (4.0 * jz.abs());
    let h = build_rotating_hamiltonian(&params)?;
    let initial = QuantumState::basis(h.layout(), &vec![0; 2 * n])?;
    let psi = QuantumState::from_raw(h.layout().clone(), Spectral::new(&h)?.evolve(initial.amplitudes(), t));
    let psi = dressed_basis_transform(&params)?.apply(&psi)?;
    let atoms: Vec<usize> = (0..n).collect();
    let rho = partial_trace(&psi, &atoms)?;

    let layout = SpaceLayout::qubits(n);
    let ising = build_ising_hamiltonian(n, jz, params.boundary)?;
    let target = QuantumState::from_raw(
        layout.clone(),
        Spectral::new(&ising)?.evolve(plus_state(n).amplitudes(), t),
    );
    let magnetization: Vec<f64> = (0..layout.total_dim())
        .map(|idx| crate::model::spins(&layout, idx).iter().sum())
        .collect();
    let score = |theta: f64| -> f64 {
        let v = CVector::from_iterator(
            target.amplitudes().len(),
            target
                .amplitudes()
                .iter()
                .zip(&magnetization)
                .map(|(a, m)| a * C64::from_polar(1.0, -theta * m / 2.0)),
        );
        (v.adjoint() * rho.matrix() * &v)[(0, 0)].re
    };
    // coarse grid, then golden-section refinement around the best point
    let grid = 720;
    let step = 4.0 * PI / grid as f64;
    let best = (0..grid)
        .map(|i| i as f64 * step)
        .max_by(|a, b| score(*a).total_cmp(&score(*b)))
        .expect("non-empty grid");
    let (mut lo, mut hi) = (best - step, best + step);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let m1 = hi - ratio * (hi - lo);
        let m2 = lo + ratio * (hi - lo);
        if score(m1) < score(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let theta = 0.5 * (lo + hi);
    Ok(FullModelCheck {
        params,
        jz,
        time_ns: t,
        fidelity: score(theta),
        theta: theta.rem_euclid(4.0 * PI),
    })
}
