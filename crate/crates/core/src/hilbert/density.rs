use nalgebra::SymmetricEigen;

use super::{CMatrix, QuantumState, C64};
use crate::error::{Error, Result};

/// Eigenvalues below this contribute nothing to the entropy.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;
/// Tolerated negative eigenvalue / trace deviation.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// Density matrix over an ordered list of subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        let d: usize = dims.iter().product();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.nrows(),
            });
        }
        Ok(Self { dims, matrix })
    }

    pub fn from_pure(state: &QuantumState) -> Self {
        let psi = state.amplitudes();
        Self {
            dims: state.layout().dims(),
            matrix: psi * psi.adjoint(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Reduced density matrix on `keep` (sorted, deduplicated).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = normalize_keep(keep, self.dims.len())?;
        let (keep_dims, map) = split_indices(&self.dims, &keep);
        let d_keep: usize = keep_dims.iter().product();
        let mut out = CMatrix::zeros(d_keep, d_keep);
        for (i, &(ki, ri)) in map.iter().enumerate() {
            for (j, &(kj, rj)) in map.iter().enumerate() {
                if ri == rj {
                    out[(ki, kj)] += self.matrix[(i, j)];
                }
            }
        }
        Ok(DensityMatrix {
            dims: keep_dims,
            matrix: out,
        })
    }

    /// `−Σ λ log₂ λ` in bits.
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        let tr = self.trace();
        if (tr - 1.0).abs() > PSD_TOLERANCE {
            return Err(Error::NotNormalized(tr));
        }
        let ev = self.eigenvalues();
        if let Some(&min) = ev.first() {
            if min < -PSD_TOLERANCE {
                return Err(Error::NotPositiveSemidefinite(min));
            }
        }
        let s: f64 = ev
            .iter()
            .filter(|&&l| l > EIGENVALUE_FLOOR)
            .map(|&l| -l * l.log2())
            .sum();
        let max = (self.matrix.nrows() as f64).log2();
        // adding 0.0 turns a -0.0 sum into +0.0
        Ok(s.clamp(0.0, max) + 0.0)
    }
}

/// Reduced density matrix of a pure state on the subsystems in `keep`.
pub fn partial_trace(state: &QuantumState, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = state.layout().dims();
    let keep = normalize_keep(keep, dims.len())?;
    if keep.iter().enumerate().all(|(i, &k)| i == k) {
        // leading block: one reshape and a product
        let keep_dims = dims[..keep.len()].to_vec();
        return Ok(DensityMatrix {
            dims: keep_dims,
            matrix: state.leading_block_density(keep.len()),
        });
    }
    let (keep_dims, map) = split_indices(&dims, &keep);
    let d_keep: usize = keep_dims.iter().product();
    let d_rest = state.layout().total_dim() / d_keep;
    let mut psi = CMatrix::zeros(d_keep, d_rest);
    for (i, &(k, r)) in map.iter().enumerate() {
        psi[(k, r)] = state.amplitudes()[i];
    }
    Ok(DensityMatrix {
        dims: keep_dims,
        matrix: &psi * psi.adjoint(),
    })
}

/// Entropy (bits) of the reduced state on `keep`.
pub fn entanglement_entropy(state: &QuantumState, keep: &[usize]) -> Result<f64> {
    partial_trace(state, keep)?.von_neumann_entropy()
}

fn normalize_keep(keep: &[usize], n: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let mut k = keep.to_vec();
    k.sort_unstable();
    k.dedup();
    if let Some(&bad) = k.iter().find(|&&s| s >= n) {
        return Err(Error::InvalidSubsystem(bad));
    }
    Ok(k)
}

/// For every full index: (index within kept factors, index within traced factors).
fn split_indices(dims: &[usize], keep: &[usize]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let keep_dims: Vec<usize> = keep.iter().map(|&s| dims[s]).collect();
    let total: usize = dims.iter().product();
    let mut map = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for _ in 0..total {
        let (mut k, mut r) = (0, 0);
        for (s, (&dg, &dm)) in digits.iter().zip(dims).enumerate() {
            if keep.binary_search(&s).is_ok() {
                k = k * dm + dg;
            } else {
                r = r * dm + dg;
            }
        }
        map.push((k, r));
        // increment row-major digits
        for s in (0..dims.len()).rev() {
            digits[s] += 1;
            if digits[s] < dims[s] {
                break;
            }
            digits[s] = 0;
        }
    }
    (keep_dims, map)
}
