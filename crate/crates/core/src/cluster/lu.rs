use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::states::{apply_local_unitaries, apply_single_qubit, require_qubits};
use crate::error::{Error, Result};
use crate::hilbert::{local, CMatrix, QuantumState, C64};

/// Single-qubit unitary `e^{iγ} u3(θ, φ, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalUnitary {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
    pub phase: f64,
}

impl LocalUnitary {
    pub const IDENTITY: Self = Self {
        theta: 0.0,
        phi: 0.0,
        lambda: 0.0,
        phase: 0.0,
    };

    pub fn from_matrix(u: &CMatrix) -> Self {
        let (theta, phi, lambda) = local::u3_angles(u);
        let phase = (local::u3(theta, phi, lambda).adjoint() * u)[(0, 0)].arg();
        Self {
            theta,
            phi,
            lambda,
            phase,
        }
    }

    pub fn matrix(&self) -> CMatrix {
        local::u3(self.theta, self.phi, self.lambda) * C64::from_polar(1.0, self.phase)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LuSearchOptions {
    pub restarts: usize,
    pub seed: u64,
    pub max_sweeps: usize,
    /// Stop a restart once a sweep improves the overlap by less than this.
    pub tolerance: f64,
}

impl Default for LuSearchOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            seed: 0x5eed,
            max_sweeps: 500,
            tolerance: 1e-15,
        }
    }
}

/// Best local unitaries found by [`local_unitary_search`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LuSearch {
    /// `|⟨target| ⊗u_j |state⟩|²`.
    pub fidelity: f64,
    pub unitaries: Vec<LocalUnitary>,
    /// Index of the winning restart (0 starts from the identity).
    pub restart: usize,
}

impl LuSearch {
    pub fn matrices(&self) -> Vec<CMatrix> {
        self.unitaries.iter().map(LocalUnitary::matrix).collect()
    }
}

/// Maximizes `|⟨target| u_1 ⊗ … ⊗ u_N |state⟩|` over single-qubit unitaries.
///
/// Each restart sweeps the qubits, replacing `u_k` by the unitary that
/// maximizes the overlap with the others held fixed (the polar factor of the
/// qubit's environment matrix), which never decreases the overlap. Restart 0
/// starts from the identity, the rest from seeded random unitaries. The best
/// restart wins; ties (within 1e-12) go to the lower index.
pub fn local_unitary_search(
    state: &QuantumState,
    target: &QuantumState,
    options: &LuSearchOptions,
) -> Result<LuSearch> {
    let n = require_qubits(state)?;
    let m = require_qubits(target)?;
    if n != m {
        return Err(Error::WrongQubitCount { expected: m, found: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let starts: Vec<Vec<CMatrix>> = (0..options.restarts.max(1))
        .map(|r| {
            (0..n)
                .map(|_| {
                    let (a, b, c): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
                    if r == 0 {
                        local::identity(2)
                    } else {
                        local::u3(
                            a * std::f64::consts::PI,
                            b * 2.0 * std::f64::consts::PI,
                            c * 2.0 * std::f64::consts::PI,
                        )
                    }
                })
                .collect()
        })
        .collect();

    let mut best: Option<LuSearch> = None;
    for (r, start) in starts.into_iter().enumerate() {
        let (fidelity, us) = optimize(state, target, start, options)?;
        // improvements within rounding count as ties
        if best.as_ref().is_none_or(|b| fidelity > b.fidelity + 1e-12) {
            best = Some(LuSearch {
                fidelity,
                unitaries: us.iter().map(LocalUnitary::from_matrix).collect(),
                restart: r,
            });
        }
    }
    Ok(best.expect("at least one restart"))
}

fn optimize(
    state: &QuantumState,
    target: &QuantumState,
    mut us: Vec<CMatrix>,
    options: &LuSearchOptions,
) -> Result<(f64, Vec<CMatrix>)> {
    let n = us.len();
    let mut last = overlap(state, target, &us)?;
    for _ in 0..options.max_sweeps {
        for k in 0..n {
            let env = environment(state, target, &us, k)?;
            // max |Tr(U A)| over unitaries: U = W V† for A = V Σ W†
            let svd = env.transpose().svd(true, true);
            let (v, w_adj) = (svd.u.expect("u"), svd.v_t.expect("v_t"));
            us[k] = w_adj.adjoint() * v.adjoint();
        }
        let now = overlap(state, target, &us)?;
        let done = now - last < options.tolerance;
        last = now;
        if done {
            break;
        }
    }
    Ok((last * last, us))
}

fn overlap(state: &QuantumState, target: &QuantumState, us: &[CMatrix]) -> Result<f64> {
    Ok(target.inner(&apply_local_unitaries(state, us)?)?.norm())
}

/// `E[a, b]` such that the overlap is `Σ_{ab} u_k[a, b] E[a, b]`.
fn environment(state: &QuantumState, target: &QuantumState, us: &[CMatrix], k: usize) -> Result<CMatrix> {
    let n = us.len();
    let mut phi = state.clone();
    for (q, u) in us.iter().enumerate() {
        if q != k {
            phi = apply_single_qubit(&phi, q, u)?;
        }
    }
    let stride = 1usize << (n - 1 - k);
    let mut env = CMatrix::zeros(2, 2);
    let (t, p) = (target.amplitudes(), phi.amplitudes());
    for idx in 0..(1usize << n) {
        if idx & stride != 0 {
            continue;
        }
        let pair = [idx, idx | stride];
        for a in 0..2 {
            for b in 0..2 {
                env[(a, b)] += t[pair[a]].conj() * p[pair[b]];
            }
        }
    }
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::states::ghz_state;

    #[test]
    fn local_unitary_round_trip() {
        let u = local::u3(0.9, -0.4, 2.2) * C64::from_polar(1.0, 1.3);
        let back = LocalUnitary::from_matrix(&u).matrix();
        assert!((back - u).norm() < 1e-12);
    }

    #[test]
    fn recovers_hidden_rotations() {
        let ghz = ghz_state(3);
        let hidden = [local::u3(0.3, 0.1, 0.2), local::hadamard(), local::u3(2.0, -1.0, 0.5)];
        let scrambled = apply_local_unitaries(&ghz, &hidden).unwrap();
        let found = local_unitary_search(&scrambled, &ghz, &LuSearchOptions::default()).unwrap();
        assert!(found.fidelity > 1.0 - 1e-10, "{}", found.fidelity);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let ghz = ghz_state(3);
        let w = crate::cluster::states::w_state(3);
        let a = local_unitary_search(&w, &ghz, &LuSearchOptions::default()).unwrap();
        let b = local_unitary_search(&w, &ghz, &LuSearchOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.fidelity < 0.9);
    }
}
