use super::{CMatrix, CVector, LinearOp, SpaceLayout, C64};
use crate::error::{Error, Result};

/// Allowed deviation of `Σ|c|²` from one for a constructed state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Pure state on a [`SpaceLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    layout: SpaceLayout,
    amplitudes: CVector,
}

impl QuantumState {
    /// Wraps amplitudes that must already be normalized.
    pub fn new(layout: SpaceLayout, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                found: amplitudes.len(),
            });
        }
        let n2 = amplitudes.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { layout, amplitudes })
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(layout: SpaceLayout, amplitudes: CVector) -> Result<Self> {
        let n = amplitudes.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        Self::new(layout, amplitudes / C64::new(n, 0.0))
    }

    /// No normalization check; for intermediate results such as `M·ψ`.
    pub(crate) fn from_raw(layout: SpaceLayout, amplitudes: CVector) -> Self {
        Self { layout, amplitudes }
    }

    pub fn basis(layout: &SpaceLayout, digits: &[usize]) -> Result<Self> {
        let idx = layout.index_of(digits)?;
        let mut amps = CVector::zeros(layout.total_dim());
        amps[idx] = C64::new(1.0, 0.0);
        Ok(Self::from_raw(layout.clone(), amps))
    }

    /// Tensor product of per-factor vectors, leftmost factor first.
    pub fn product(layout: &SpaceLayout, locals: &[CVector]) -> Result<Self> {
        if locals.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                expected: layout.len(),
                found: locals.len(),
            });
        }
        let mut amps = CVector::from_element(1, C64::new(1.0, 0.0));
        for (site, v) in locals.iter().enumerate() {
            let d = layout.dim_of(site)?;
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            amps = amps.kronecker(v);
        }
        Self::normalized(layout.clone(), amps)
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub fn renormalize(&mut self) {
        let n = self.amplitudes.norm();
        if n > 0.0 {
            self.amplitudes /= C64::new(n, 0.0);
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<C64> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch);
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `⟨ψ|O|ψ⟩`.
    pub fn expectation(&self, op: &LinearOp) -> Result<C64> {
        if &self.layout != op.layout() {
            return Err(Error::LayoutMismatch);
        }
        Ok(self.amplitudes.dotc(&(op.matrix() * &self.amplitudes)))
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    /// Reduced matrix on the leading `n_keep` factors:
    /// `ρ = Ψ Ψ†` with `Ψ` the amplitude array reshaped to (kept, traced).
    pub(crate) fn leading_block_density(&self, n_keep: usize) -> CMatrix {
        let dims = self.layout.dims();
        let d_keep: usize = dims[..n_keep].iter().product();
        let d_rest = self.layout.total_dim() / d_keep;
        // nalgebra is column-major; index = keep * d_rest + rest
        let psi = CMatrix::from_fn(d_keep, d_rest, |k, r| self.amplitudes[k * d_rest + r]);
        &psi * psi.adjoint()
    }
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}
