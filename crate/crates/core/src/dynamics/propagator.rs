use nalgebra::{DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, CVector, LinearOp, OpFlags, C64};
use crate::model::HERMITIAN_TOLERANCE;

/// Eigendecomposition `H = V diag(E) V†` of a Hermitian operator, reused for
/// every evolution time.
#[derive(Debug, Clone)]
pub struct Spectral {
    energies: DVector<f64>,
    vectors: CMatrix,
    diagonal: bool,
}

impl Spectral {
    pub fn new(h: &LinearOp) -> Result<Self> {
        let err = h.hermiticity_error();
        if err >= HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(err));
        }
        if h.flags().diagonal || h.is_diagonal(0.0) {
            let energies = DVector::from_iterator(h.dim(), h.diagonal().iter().map(|z| z.re));
            return Ok(Self {
                energies,
                vectors: CMatrix::identity(h.dim(), h.dim()),
                diagonal: true,
            });
        }
        let sym = (h.matrix() + h.matrix().adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(sym);
        Ok(Self {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
            diagonal: false,
        })
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    fn phases(&self, t: f64) -> CVector {
        self.energies.map(|e| C64::from_polar(1.0, -e * t))
    }

    /// `e^{−iHt}` as a matrix.
    pub fn unitary(&self, t: f64) -> CMatrix {
        let ph = self.phases(t);
        if self.diagonal {
            return CMatrix::from_diagonal(&ph);
        }
        let mut scaled = self.vectors.clone();
        for (mut col, p) in scaled.column_iter_mut().zip(ph.iter()) {
            col *= *p;
        }
        scaled * self.vectors.adjoint()
    }

    /// `e^{−iHt} ψ` without forming the full unitary.
    pub fn evolve(&self, psi: &CVector, t: f64) -> CVector {
        let ph = self.phases(t);
        if self.diagonal {
            return psi.component_mul(&ph);
        }
        let c = self.vectors.adjoint() * psi;
        &self.vectors * c.component_mul(&ph)
    }
}

/// `U(t) = e^{−iHt}` for Hermitian `H`. Diagonal operators are exponentiated
/// entrywise, everything else through the eigendecomposition.
pub fn propagator(h: &LinearOp, t: f64) -> Result<LinearOp> {
    let spectral = Spectral::new(h)?;
    let diagonal = spectral.diagonal;
    Ok(
        LinearOp::new(h.layout().clone(), spectral.unitary(t))?.with_flags(OpFlags {
            hermitian: false,
            unitary: true,
            diagonal,
        }),
    )
}

/// General matrix exponential by scaling and squaring of a Taylor series.
/// Used for inputs that need not be Hermitian.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let norm1 = a
        .column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * C64::new(0.5f64.powi(squarings), 0.0);
    let mut result = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    for k in 1..=20 {
        term = &term * &scaled * C64::new(1.0 / k as f64, 0.0);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}
