//! Qubit-side algebra: Ising evolution, the nearest-neighbour phase gate,
//! cluster-state generation and verification against cluster and GHZ targets.
//!
//! Qubits use the dressed basis: index 0 is |↓⟩ (σᶻ = +1), index 1 is |↑⟩.

mod gates;
mod lu;
mod stabilizer;
mod states;

pub use gates::{
    generate_cluster_state, ising_unitary, local_corrections, phase_gate_unitary, plus_state, PhaseGateSpec,
};
pub use lu::{local_unitary_search, LocalUnitary, LuSearch, LuSearchOptions};
pub use stabilizer::{
    ghz_equivalence_check, stabilizer_expectations, stabilizer_report, verify_cluster, GhzCheck, StabilizerReport,
    LU_THRESHOLD,
};
pub use states::{apply_local_unitaries, apply_single_qubit, canonical_cluster_state, ghz_state, measure_z, w_state};

use crate::error::Result;
use crate::hilbert::{local, CMatrix, QuantumState};
use crate::model::Boundary;

/// Single-qubit corrections taking the generated state to the canonical
/// cluster state: `σᶻ` on the second qubit of every bond.
pub fn cluster_corrections(n: usize, boundary: Boundary) -> Vec<CMatrix> {
    let mut flips = vec![false; n];
    for (_, j) in boundary.bonds(n) {
        flips[j] ^= true;
    }
    flips
        .into_iter()
        .map(|f| if f { local::sigma_z() } else { local::identity(2) })
        .collect()
}

/// The generated state with [`cluster_corrections`] applied.
pub fn corrected_cluster_state(n: usize, boundary: Boundary) -> Result<QuantumState> {
    apply_local_unitaries(&generate_cluster_state(n, boundary)?, &cluster_corrections(n, boundary))
}
