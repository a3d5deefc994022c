use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, CVector, QuantumState, SpaceLayout, C64};
use crate::model::Boundary;

pub(crate) fn require_qubits(state: &QuantumState) -> Result<usize> {
    let layout = state.layout();
    if layout.qubit_count() != layout.len() {
        return Err(Error::Config("expected a qubit-only state".into()));
    }
    Ok(layout.len())
}

fn bit(index: usize, n: usize, qubit: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Graph state `Π_bonds CZ ⊗|+⟩`: the joint +1 eigenstate of
/// `K_j = σˣ_j Π_{nbr} σᶻ`.
pub fn canonical_cluster_state(n: usize, boundary: Boundary) -> Result<QuantumState> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 qubits, got {n}")));
    }
    let bonds = boundary.bonds(n);
    let amp = (0.5f64).powf(n as f64 / 2.0);
    let amps = CVector::from_fn(1 << n, |idx, _| {
        let odd = bonds
            .iter()
            .filter(|&&(i, j)| bit(idx, n, i) == 1 && bit(idx, n, j) == 1)
            .count()
            % 2;
        C64::new(if odd == 1 { -amp } else { amp }, 0.0)
    });
    QuantumState::new(SpaceLayout::qubits(n), amps)
}

/// `(|↓…↓⟩ + |↑…↑⟩)/√2`.
pub fn ghz_state(n: usize) -> QuantumState {
    let mut amps = CVector::zeros(1 << n);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = C64::new(s, 0.0);
    amps[(1 << n) - 1] = C64::new(s, 0.0);
    QuantumState::from_raw(SpaceLayout::qubits(n), amps)
}

/// Equal superposition of the single-↑ basis states.
pub fn w_state(n: usize) -> QuantumState {
    let mut amps = CVector::zeros(1 << n);
    let a = 1.0 / (n as f64).sqrt();
    for q in 0..n {
        amps[1 << q] = C64::new(a, 0.0);
    }
    QuantumState::from_raw(SpaceLayout::qubits(n), amps)
}

/// Applies `u` to one qubit without forming the full operator.
pub fn apply_single_qubit(state: &QuantumState, qubit: usize, u: &CMatrix) -> Result<QuantumState> {
    let n = require_qubits(state)?;
    if qubit >= n {
        return Err(Error::SiteOutOfRange { site: qubit, len: n });
    }
    let stride = 1 << (n - 1 - qubit);
    let mut out = state.amplitudes().clone();
    let src = state.amplitudes();
    for idx in 0..(1 << n) {
        if idx & stride == 0 {
            let (a0, a1) = (src[idx], src[idx | stride]);
            out[idx] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
            out[idx | stride] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
        }
    }
    Ok(QuantumState::from_raw(state.layout().clone(), out))
}

/// `⊗_j u_j ψ`.
pub fn apply_local_unitaries(state: &QuantumState, unitaries: &[CMatrix]) -> Result<QuantumState> {
    let n = require_qubits(state)?;
    if unitaries.len() != n {
        return Err(Error::WrongQubitCount {
            expected: n,
            found: unitaries.len(),
        });
    }
    let mut psi = state.clone();
    for (q, u) in unitaries.iter().enumerate() {
        psi = apply_single_qubit(&psi, q, u)?;
    }
    Ok(psi)
}

/// Projective σᶻ measurement of `qubit` with result `outcome` (0 = ↓, 1 = ↑).
/// Returns the outcome probability and the normalized state of the other
/// qubits.
pub fn measure_z(state: &QuantumState, qubit: usize, outcome: usize) -> Result<(f64, QuantumState)> {
    let n = require_qubits(state)?;
    if qubit >= n {
        return Err(Error::SiteOutOfRange { site: qubit, len: n });
    }
    if n < 2 {
        return Err(Error::InvalidParams("nothing left after the measurement".into()));
    }
    let amps: Vec<C64> = (0..(1usize << n))
        .filter(|&idx| bit(idx, n, qubit) == outcome)
        .map(|idx| state.amplitudes()[idx])
        .collect();
    let rest = CVector::from_vec(amps);
    let p = rest.norm_squared();
    let post = QuantumState::normalized(SpaceLayout::qubits(n - 1), rest)?;
    Ok((p, post))
}
