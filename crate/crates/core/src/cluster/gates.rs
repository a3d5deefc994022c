use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{CVector, LinearOp, QuantumState, SpaceLayout, C64};
use crate::model::{spins, Boundary};

/// Ising evolution of `n` qubits for time `t` at coupling `jz`; the phase-gate
/// angle is `φ = J_z t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGateSpec {
    pub n: usize,
    /// GHz.
    pub jz: f64,
    /// ns.
    pub t: f64,
    pub boundary: Boundary,
}

impl PhaseGateSpec {
    /// Unit coupling, so that `t` is the phase itself.
    pub fn at_phase(n: usize, phi: f64, boundary: Boundary) -> Self {
        Self {
            n,
            jz: 1.0,
            t: phi,
            boundary,
        }
    }

    /// The cluster-generating gate, `φ = π`.
    pub fn cluster(n: usize, boundary: Boundary) -> Self {
        Self::at_phase(n, std::f64::consts::PI, boundary)
    }

    pub fn phase(&self) -> f64 {
        self.jz * self.t
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("need at least 2 qubits, got {}", self.n)));
        }
        if !(self.jz.is_finite() && self.t.is_finite()) {
            return Err(Error::InvalidParams("J_z and t must be finite".into()));
        }
        Ok(())
    }

    pub fn layout(&self) -> SpaceLayout {
        SpaceLayout::qubits(self.n)
    }
}

/// Diagonal of a product-basis operator `exp(i f(s))`, with `s` the σᶻ
/// eigenvalues of the basis state.
fn diagonal_phases(spec: &PhaseGateSpec, f: impl Fn(&[f64]) -> f64) -> Vec<C64> {
    let layout = spec.layout();
    (0..layout.total_dim())
        .map(|idx| C64::from_polar(1.0, f(&spins(&layout, idx))))
        .collect()
}

fn diagonal_op(spec: &PhaseGateSpec, diag: Vec<C64>) -> Result<LinearOp> {
    spec.validate()?;
    LinearOp::from_diagonal(&spec.layout(), &diag)
}

pub(crate) fn ising_phases(spec: &PhaseGateSpec) -> Vec<C64> {
    let bonds = spec.boundary.bonds(spec.n);
    let phi = spec.phase();
    diagonal_phases(spec, |s| -phi * bonds.iter().map(|&(i, j)| s[i] * s[j]).sum::<f64>())
}

pub(crate) fn phase_gate_phases(spec: &PhaseGateSpec) -> Vec<C64> {
    let bonds = spec.boundary.bonds(spec.n);
    let phi = spec.phase();
    diagonal_phases(spec, |s| {
        phi * bonds
            .iter()
            .map(|&(i, j)| (1.0 + s[i]) / 2.0 * (1.0 - s[j]) / 2.0)
            .sum::<f64>()
    })
}

/// `exp(−i J_z t Σ_bonds σᶻ_j σᶻ_{j+1})`.
pub fn ising_unitary(spec: &PhaseGateSpec) -> Result<LinearOp> {
    diagonal_op(spec, ising_phases(spec))
}

/// `U_p = exp(iφ Σ_bonds (1+σᶻ_j)/2 · (1−σᶻ_{j+1})/2)`: every ordered bond
/// in the configuration (↓_j, ↑_{j+1}) picks up `e^{iφ}`.
pub fn phase_gate_unitary(spec: &PhaseGateSpec) -> Result<LinearOp> {
    diagonal_op(spec, phase_gate_phases(spec))
}

/// The diagonal unitary `C` with `U_p = C · exp(−i(φ/4) Σ σᶻσᶻ)`:
/// `C = e^{iφ n_b/4} Π_bonds e^{iφσᶻ_j/4} e^{−iφσᶻ_{j+1}/4}`.
pub fn local_corrections(spec: &PhaseGateSpec) -> Result<LinearOp> {
    let bonds = spec.boundary.bonds(spec.n);
    let phi = spec.phase();
    let diag = diagonal_phases(spec, |s| {
        phi / 4.0 * bonds.iter().map(|&(i, j)| 1.0 + s[i] - s[j]).sum::<f64>()
    });
    diagonal_op(spec, diag)
}

/// `⊗_j |+⟩` on `n` qubits, the dressed-basis image of all atoms in `|g⟩`.
pub fn plus_state(n: usize) -> QuantumState {
    let layout = SpaceLayout::qubits(n);
    let amp = C64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
    QuantumState::from_raw(layout.clone(), CVector::from_element(layout.total_dim(), amp))
}

/// `U_p(φ = π) ⊗_j|+⟩`, normalized. Works up to the size a state vector fits
/// in memory; no dense operator is formed.
pub fn generate_cluster_state(n: usize, boundary: Boundary) -> Result<QuantumState> {
    let spec = PhaseGateSpec::cluster(n, boundary);
    spec.validate()?;
    let phases = phase_gate_phases(&spec);
    let plus = plus_state(n);
    let amps = plus.amplitudes().zip_map(&CVector::from_vec(phases), |a, p| a * p);
    QuantumState::normalized(spec.layout(), amps)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn zero_phase_is_identity() {
        for b in [Boundary::Open, Boundary::Periodic] {
            let spec = PhaseGateSpec::at_phase(3, 0.0, b);
            let id = LinearOp::identity(&spec.layout());
            assert!(ising_unitary(&spec).unwrap().max_abs_diff(&id) < 1e-15);
            assert!(phase_gate_unitary(&spec).unwrap().max_abs_diff(&id) < 1e-15);
        }
    }

    #[test]
    fn two_qubit_ising_quarter_phase() {
        let u = ising_unitary(&PhaseGateSpec::at_phase(2, PI / 4.0, Boundary::Open)).unwrap();
        let aligned = C64::from_polar(1.0, -PI / 4.0);
        let anti = C64::from_polar(1.0, PI / 4.0);
        let d = u.diagonal();
        assert!((d[0] - aligned).norm() < 1e-15 && (d[3] - aligned).norm() < 1e-15);
        assert!((d[1] - anti).norm() < 1e-15 && (d[2] - anti).norm() < 1e-15);
    }

    #[test]
    fn ring_corrections_are_a_global_phase() {
        for n in 3..=6 {
            let spec = PhaseGateSpec::at_phase(n, 0.83, Boundary::Periodic);
            let c = local_corrections(&spec).unwrap();
            let global = C64::from_polar(1.0, n as f64 * 0.83 / 4.0);
            let expected = LinearOp::identity(&spec.layout()).scale(global);
            assert!(c.max_abs_diff(&expected) < 1e-14, "N={n}");
        }
    }

    #[test]
    fn open_pair_corrections_touch_only_the_ends() {
        // N = 2 open: C = e^{iφ/4} e^{iφσᶻ₁/4} e^{−iφσᶻ₂/4}
        let phi = 1.1;
        let c = local_corrections(&PhaseGateSpec::at_phase(2, phi, Boundary::Open)).unwrap();
        let expected: Vec<C64> = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .map(|(s1, s2)| C64::from_polar(1.0, phi / 4.0 * (1.0 + s1 - s2)))
            .collect();
        for (a, b) in c.diagonal().iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn generated_state_is_normalized_and_diagonal_phases_only() {
        let psi = generate_cluster_state(4, Boundary::Open).unwrap();
        for a in psi.amplitudes().iter() {
            assert!((a.norm() - 0.25).abs() < 1e-15);
        }
        let dense = phase_gate_unitary(&PhaseGateSpec::cluster(4, Boundary::Open))
            .unwrap()
            .apply(&plus_state(4))
            .unwrap();
        assert!((dense.amplitudes() - psi.amplitudes()).norm() < 1e-15);
    }
}
