use serde::{Deserialize, Serialize};

use super::{cavity_dispersion, normal_modes, Boundary, ModelParams};
use crate::error::Result;
use crate::hilbert::{local, CMatrix, LinearOp, OpFlags, SpaceLayout, C64};

/// Hermiticity tolerance every builder output is checked against.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Whether a momentum-space transform carries the `1/√N` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourierNormalization {
    /// The sums exactly as printed: `Σ_k a_k e^{ikj}` without `1/√N`.
    PaperLiteral,
    /// Unitary transform; equivalent to dividing the k-sums by `N`
    /// (couplings) or `√N` (operators).
    Normalized,
}

/// Layout of the full model: `N` atoms then `N` modes.
pub fn full_layout(params: &ModelParams) -> Result<SpaceLayout> {
    SpaceLayout::atoms_and_modes(params.sites, params.n_max)
}

/// Embedded single-site operators of the full model.
pub(crate) struct SiteOperators {
    pub layout: SpaceLayout,
    /// |1⟩⟨0| on each atom (S⁺ in the bare basis, σ⁺ in the dressed one).
    pub raise: Vec<CMatrix>,
    /// σ_z on each atom.
    pub sigma_z: Vec<CMatrix>,
    /// Annihilation operator of each cavity.
    pub a: Vec<CMatrix>,
}

impl SiteOperators {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let layout = full_layout(params)?;
        let n = params.sites;
        let embed = |site: usize, m: &CMatrix| -> Result<CMatrix> {
            Ok(LinearOp::embed_local(&layout, site, m)?.into_matrix())
        };
        let raise = (0..n)
            .map(|j| embed(j, &local::raising()))
            .collect::<Result<Vec<_>>>()?;
        let sigma_z = (0..n)
            .map(|j| embed(j, &local::sigma_z()))
            .collect::<Result<Vec<_>>>()?;
        let a = (0..n)
            .map(|j| embed(n + j, &local::annihilation(params.n_max)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            layout,
            raise,
            sigma_z,
            a,
        })
    }

    fn zeros(&self) -> CMatrix {
        let d = self.layout.total_dim();
        CMatrix::zeros(d, d)
    }

    /// `ω Σ a†a + J Σ_links (a†_i a_j + a_i a†_j)`.
    fn cavity_part(&self, params: &ModelParams, omega: f64) -> CMatrix {
        let mut h = self.zeros();
        for a in &self.a {
            h += a.adjoint() * a * C64::new(omega, 0.0);
        }
        for (i, j) in params.boundary.hopping_links(params.sites) {
            let hop = self.a[i].adjoint() * &self.a[j] + &self.a[i] * self.a[j].adjoint();
            h += hop * C64::new(params.hopping, 0.0);
        }
        h
    }

    /// `g Σ (a†_j S⁻_j + a_j S⁺_j)`.
    fn jaynes_cummings(&self, g: f64) -> CMatrix {
        let mut h = self.zeros();
        for (a, sp) in self.a.iter().zip(&self.raise) {
            h += (a.adjoint() * sp.adjoint() + a * sp) * C64::new(g, 0.0);
        }
        h
    }

    fn excitation(&self, omega: f64) -> CMatrix {
        let mut h = self.zeros();
        for sp in &self.raise {
            h += sp * sp.adjoint() * C64::new(omega, 0.0);
        }
        h
    }

    fn finish(&self, h: CMatrix) -> Result<LinearOp> {
        LinearOp::new(self.layout.clone(), h)?.assert_hermitian(HERMITIAN_TOLERANCE)
    }
}

/// Lab-frame Hamiltonian at time `t` (ns):
/// `Σ ω₀ S⁺S⁻ + ω_c Σ a†a + J_c Σ (a†_j a_{j+1} + h.c.)
///  + Σ [g (a† S⁻ + a S⁺) + Ω (S⁺ e^{−iω_L t} + S⁻ e^{iω_L t})]`.
pub fn build_lab_hamiltonian(params: &ModelParams, t: f64) -> Result<LinearOp> {
    params.validate()?;
    let ops = SiteOperators::new(params)?;
    let mut h = ops.excitation(params.omega0);
    h += ops.cavity_part(params, params.omega_c);
    h += ops.jaynes_cummings(params.g);
    let drive = C64::from_polar(params.rabi, -params.omega_l * t);
    for sp in &ops.raise {
        h += sp * drive + sp.adjoint() * drive.conj();
    }
    ops.finish(h)
}

/// Time-independent Hamiltonian in the frame rotating at ω_L, in the
/// real-space mode basis:
/// `Δ Σ S⁺S⁻ + (ω_c − ω_L) Σ a†a + J_c Σ hop + Ω Σ (S⁺ + S⁻) + g Σ (a† S⁻ + a S⁺)`.
pub fn build_rotating_hamiltonian(params: &ModelParams) -> Result<LinearOp> {
    params.validate()?;
    let ops = SiteOperators::new(params)?;
    let mut h = ops.excitation(params.atom_detuning());
    h += ops.cavity_part(params, params.cavity_detuning());
    h += ops.jaynes_cummings(params.g);
    for sp in &ops.raise {
        h += (sp + sp.adjoint()) * C64::new(params.rabi, 0.0);
    }
    ops.finish(h)
}

/// Strong-driving RWA Hamiltonian in the interaction picture, with the atoms
/// in the dressed basis (factor index 0 = |↓⟩, 1 = |↑⟩):
/// `(g/2) Σ_j σᶻ_j Σ_k (u_k(j) b†_k e^{−iδ_k t} + h.c.)`.
///
/// On a ring the modes are plane waves `b_k = N^{−1/2} Σ_l e^{ikl} a_l` and
/// `u_k(j) = e^{ikj}` (literal) or `e^{ikj}/√N` (normalized). Open chains use
/// the real normal modes of the hopping matrix with the same scaling.
pub fn build_rwa_hamiltonian(params: &ModelParams, t: f64, normalization: FourierNormalization) -> Result<LinearOp> {
    params.validate()?;
    let ops = SiteOperators::new(params)?;
    let n = params.sites;
    let sqrt_n = (n as f64).sqrt();
    let scale = match normalization {
        FourierNormalization::PaperLiteral => 1.0,
        FourierNormalization::Normalized => 1.0 / sqrt_n,
    };

    // (frequency, amplitude of a_l in b_m, u_m(j))
    let modes: Vec<(f64, Vec<C64>, Vec<C64>)> = match params.boundary {
        Boundary::Periodic => cavity_dispersion(params)?
            .modes
            .iter()
            .map(|m| {
                let phase = |j: usize| C64::from_polar(1.0, m.k * j as f64);
                let profile = (0..n).map(|l| phase(l) / sqrt_n).collect();
                let coupling = (0..n).map(phase).collect();
                (m.omega_k, profile, coupling)
            })
            .collect(),
        Boundary::Open => normal_modes(params)
            .into_iter()
            .map(|(w, v)| {
                let profile: Vec<C64> = v.iter().map(|&x| C64::new(x, 0.0)).collect();
                let coupling = v.iter().map(|&x| C64::new(x * sqrt_n, 0.0)).collect();
                (w, profile, coupling)
            })
            .collect(),
    };

    let mut h = ops.zeros();
    for (omega_m, profile, coupling) in &modes {
        let delta = params.omega_l - omega_m;
        let mut b = ops.zeros();
        for (l, amp) in profile.iter().enumerate() {
            b += &ops.a[l] * *amp;
        }
        let b_dag = b.adjoint();
        let rot = C64::from_polar(1.0, -delta * t);
        for (j, sz) in ops.sigma_z.iter().enumerate() {
            let coef = coupling[j] * rot * (0.5 * params.g * scale);
            let term = sz * &b_dag * coef;
            h += &term + term.adjoint();
        }
    }
    ops.finish(h)
}

/// Maps bare atomic amplitudes (g, e) to dressed ones (↓, ↑) on every atom;
/// identity on the modes.
pub fn dressed_basis_transform(params: &ModelParams) -> Result<LinearOp> {
    let layout = full_layout(params)?;
    let mut m = CMatrix::from_element(1, 1, C64::new(1.0, 0.0));
    for f in layout.factors().iter().take(params.sites) {
        debug_assert_eq!(f.dim(), 2);
        m = m.kronecker(&local::hadamard());
    }
    let mode_dim = layout.total_dim() >> params.sites;
    m = m.kronecker(&local::identity(mode_dim));
    Ok(LinearOp::new(layout, m)?.with_flags(OpFlags {
        hermitian: true,
        unitary: true,
        diagonal: false,
    }))
}

/// `J_z Σ_bonds σᶻ_j σᶻ_{j+1}` on `n` qubits (dressed basis, index 0 = |↓⟩).
pub fn build_ising_hamiltonian(n: usize, jz: f64, boundary: Boundary) -> Result<LinearOp> {
    let layout = SpaceLayout::qubits(n);
    let bonds = boundary.bonds(n);
    let diag: Vec<C64> = (0..layout.total_dim())
        .map(|idx| {
            let s = spins(&layout, idx);
            let e: f64 = bonds.iter().map(|&(i, j)| s[i] * s[j]).sum();
            C64::new(jz * e, 0.0)
        })
        .collect();
    LinearOp::from_diagonal(&layout, &diag)
}

/// σᶻ eigenvalues (+1 for |↓⟩, −1 for |↑⟩) of a qubit basis state.
pub(crate) fn spins(layout: &SpaceLayout, index: usize) -> Vec<f64> {
    layout
        .digits_of(index)
        .into_iter()
        .map(|d| if d == 0 { 1.0 } else { -1.0 })
        .collect()
}
