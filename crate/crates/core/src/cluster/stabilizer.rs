use serde::{Deserialize, Serialize};

use super::lu::{local_unitary_search, LocalUnitary, LuSearchOptions};
use super::states::{apply_local_unitaries, canonical_cluster_state, ghz_state, require_qubits};
use crate::error::{Error, Result};
use crate::hilbert::{entanglement_entropy, fidelity, QuantumState};
use crate::model::Boundary;

/// Fidelity a local-unitary search must reach to count as equivalence.
pub const LU_THRESHOLD: f64 = 1.0 - 1e-6;

/// Expectations `⟨K_j⟩` of the chain stabilizers `K_j = σˣ_j Π_{nbr} σᶻ` and
/// the fidelity with the canonical cluster state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub boundary: Boundary,
    pub expectations: Vec<f64>,
    pub fidelity: f64,
    /// Local unitaries applied before measuring, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<LocalUnitary>>,
}

impl StabilizerReport {
    pub fn all_plus_one(&self, tol: f64) -> bool {
        self.expectations.iter().all(|e| (e - 1.0).abs() <= tol)
    }
}

fn neighbours(n: usize, boundary: Boundary) -> Vec<Vec<usize>> {
    let mut nb = vec![Vec::new(); n];
    for (i, j) in boundary.bonds(n) {
        nb[i].push(j);
        nb[j].push(i);
    }
    nb
}

/// `⟨ψ| σˣ_j Π_{nbr} σᶻ |ψ⟩` for every qubit.
pub fn stabilizer_expectations(state: &QuantumState, boundary: Boundary) -> Result<Vec<f64>> {
    let n = require_qubits(state)?;
    let amps = state.amplitudes();
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    Ok(neighbours(n, boundary)
        .iter()
        .enumerate()
        .map(|(j, nbrs)| {
            let flip = 1usize << (n - 1 - j);
            (0..amps.len())
                .map(|idx| {
                    let parity = nbrs.iter().map(|&q| bit(idx, q)).sum::<usize>() % 2;
                    let sign = if parity == 1 { -1.0 } else { 1.0 };
                    (amps[idx].conj() * amps[idx ^ flip]).re * sign
                })
                .sum()
        })
        .collect())
}

pub fn stabilizer_report(state: &QuantumState, boundary: Boundary) -> Result<StabilizerReport> {
    let n = require_qubits(state)?;
    let canonical = canonical_cluster_state(n, boundary)?;
    Ok(StabilizerReport {
        boundary,
        expectations: stabilizer_expectations(state, boundary)?,
        fidelity: fidelity(&canonical, state)?,
        witness: None,
    })
}

/// Finds local unitaries taking `state` to the canonical cluster state and
/// reports the stabilizers of the corrected state.
pub fn verify_cluster(state: &QuantumState, boundary: Boundary, options: &LuSearchOptions) -> Result<StabilizerReport> {
    let n = require_qubits(state)?;
    let canonical = canonical_cluster_state(n, boundary)?;
    let found = local_unitary_search(state, &canonical, options)?;
    let corrected = apply_local_unitaries(state, &found.matrices())?;
    let mut report = stabilizer_report(&corrected, boundary)?;
    report.witness = Some(found.unitaries);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhzCheck {
    pub equivalent: bool,
    /// Entropy (bits) of each single qubit; for three qubits these are also
    /// the entropies of the three one-vs-two cuts.
    pub single_qubit_entropies: Vec<f64>,
    /// Best fidelity with GHZ under local unitaries.
    pub fidelity: f64,
    pub witness: Vec<LocalUnitary>,
}

/// Whether a three-qubit state is GHZ up to local unitaries: maximally mixed
/// marginals and a local-unitary search reaching [`LU_THRESHOLD`].
pub fn ghz_equivalence_check(state: &QuantumState, options: &LuSearchOptions) -> Result<GhzCheck> {
    let n = require_qubits(state)?;
    if n != 3 {
        return Err(Error::WrongQubitCount { expected: 3, found: n });
    }
    let entropies = (0..3)
        .map(|q| entanglement_entropy(state, &[q]))
        .collect::<Result<Vec<_>>>()?;
    let ghz = ghz_state(3);
    let found = local_unitary_search(state, &ghz, options)?;
    let marginals_ok = entropies.iter().all(|s| (s - 1.0).abs() < 1e-9);
    Ok(GhzCheck {
        equivalent: marginals_ok && found.fidelity > LU_THRESHOLD,
        single_qubit_entropies: entropies,
        fidelity: found.fidelity,
        witness: found.unitaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::gates::plus_state;
    use crate::cluster::states::w_state;
    use crate::hilbert::local;

    #[test]
    fn canonical_cluster_is_stabilized() {
        for b in [Boundary::Open, Boundary::Periodic] {
            for n in 2..=6 {
                let r = stabilizer_report(&canonical_cluster_state(n, b).unwrap(), b).unwrap();
                assert!(r.all_plus_one(1e-12), "{b} N={n}: {:?}", r.expectations);
                assert!((r.fidelity - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn product_state_has_zero_stabilizers() {
        let r = stabilizer_report(&plus_state(4), Boundary::Open).unwrap();
        assert!(r.expectations.iter().all(|e| e.abs() < 1e-15));
    }

    #[test]
    fn single_errors_flip_anticommuting_stabilizers() {
        // σᶻ_2 anticommutes only with K_2; σˣ_2 with the K_j that hold σᶻ_2
        let b = Boundary::Open;
        let c = canonical_cluster_state(5, b).unwrap();
        for (err, expected) in [
            (local::sigma_z(), [1.0, 1.0, -1.0, 1.0, 1.0]),
            (local::sigma_x(), [1.0, -1.0, 1.0, -1.0, 1.0]),
        ] {
            let hit = super::super::states::apply_single_qubit(&c, 2, &err).unwrap();
            let e = stabilizer_expectations(&hit, b).unwrap();
            for (a, x) in e.iter().zip(expected) {
                assert!((a - x).abs() < 1e-12, "{e:?}");
            }
        }
    }

    #[test]
    fn ghz_is_ghz_with_identity_witness() {
        let check = ghz_equivalence_check(&ghz_state(3), &LuSearchOptions::default()).unwrap();
        assert!(check.equivalent);
        for u in &check.witness {
            assert!((u.matrix() - local::identity(2)).norm() < 1e-12, "{u:?}");
        }
    }

    #[test]
    fn w_is_not_ghz() {
        let check = ghz_equivalence_check(&w_state(3), &LuSearchOptions::default()).unwrap();
        assert!(!check.equivalent);
    }

    #[test]
    fn rejects_other_sizes() {
        assert!(matches!(
            ghz_equivalence_check(&ghz_state(4), &LuSearchOptions::default()),
            Err(Error::WrongQubitCount { expected: 3, found: 4 })
        ));
    }
}
