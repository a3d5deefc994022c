use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{Boundary, ModelParams};
use crate::error::{Error, Result};

/// One Fourier mode of the cavity ring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KMode {
    /// Crystal momentum in [0, 2π).
    pub k: f64,
    /// ω_k = ω_c + 2 J_c cos k.
    pub omega_k: f64,
    /// δ_k = ω_L − ω_k.
    pub delta_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KSpectrum {
    pub modes: Vec<KMode>,
}

impl KSpectrum {
    pub fn omegas(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.omega_k).collect()
    }

    pub fn deltas(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.delta_k).collect()
    }
}

/// Fourier modes of the periodic cavity ring, `k = 2πm/N`.
pub fn cavity_dispersion(params: &ModelParams) -> Result<KSpectrum> {
    params.validate()?;
    if params.boundary != Boundary::Periodic {
        return Err(Error::OpenBoundaryDispersion);
    }
    let n = params.sites;
    let modes = (0..n)
        .map(|m| {
            let k = 2.0 * PI * m as f64 / n as f64;
            let omega_k = params.omega_c + 2.0 * params.hopping * k.cos();
            KMode {
                k,
                omega_k,
                delta_k: params.omega_l - omega_k,
            }
        })
        .collect();
    Ok(KSpectrum { modes })
}

/// Single-photon block of the cavity Hamiltonian in real space:
/// ω_c on the diagonal plus J_c for every hopping link.
pub fn hopping_matrix(params: &ModelParams) -> DMatrix<f64> {
    let n = params.sites;
    let mut h = DMatrix::from_diagonal_element(n, n, params.omega_c);
    for (i, j) in params.boundary.hopping_links(n) {
        h[(i, j)] += params.hopping;
        h[(j, i)] += params.hopping;
    }
    h
}

/// Normal modes of the real-space hopping matrix, ascending in frequency:
/// `(ω_m, v_m)` with `v_m` the real mode profile over sites.
pub fn normal_modes(params: &ModelParams) -> Vec<(f64, Vec<f64>)> {
    let eig = SymmetricEigen::new(hopping_matrix(params));
    let mut modes: Vec<(f64, Vec<f64>)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .map(|(&w, v)| (w, v.iter().copied().collect()))
        .collect();
    modes.sort_by(|a, b| a.0.total_cmp(&b.0));
    modes
}
