use std::ops::{Add, Mul, Sub};

use super::{max_abs, CMatrix, QuantumState, SpaceLayout, C64};
use crate::error::{Error, Result};

/// Properties known by construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpFlags {
    pub hermitian: bool,
    pub unitary: bool,
    pub diagonal: bool,
}

/// Dense operator on a [`SpaceLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOp {
    layout: SpaceLayout,
    matrix: CMatrix,
    flags: OpFlags,
}

impl LinearOp {
    pub fn new(layout: SpaceLayout, matrix: CMatrix) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.nrows(),
            });
        }
        Ok(Self {
            layout,
            matrix,
            flags: OpFlags::default(),
        })
    }

    pub fn zeros(layout: &SpaceLayout) -> Self {
        let d = layout.total_dim();
        Self {
            layout: layout.clone(),
            matrix: CMatrix::zeros(d, d),
            flags: OpFlags {
                hermitian: true,
                unitary: false,
                diagonal: true,
            },
        }
    }

    pub fn identity(layout: &SpaceLayout) -> Self {
        let d = layout.total_dim();
        Self {
            layout: layout.clone(),
            matrix: CMatrix::identity(d, d),
            flags: OpFlags {
                hermitian: true,
                unitary: true,
                diagonal: true,
            },
        }
    }

    /// Diagonal operator from its diagonal entries.
    pub fn from_diagonal(layout: &SpaceLayout, diag: &[C64]) -> Result<Self> {
        let d = layout.total_dim();
        if diag.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: diag.len(),
            });
        }
        let matrix = CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag));
        Ok(Self {
            layout: layout.clone(),
            matrix,
            flags: OpFlags {
                hermitian: diag.iter().all(|z| z.im == 0.0),
                unitary: diag.iter().all(|z| (z.norm() - 1.0).abs() < 1e-14),
                diagonal: true,
            },
        })
    }

    /// `I ⊗ … ⊗ local ⊗ … ⊗ I` with `local` on factor `site`.
    pub fn embed_local(layout: &SpaceLayout, site: usize, local: &CMatrix) -> Result<Self> {
        let d_site = layout.dim_of(site)?;
        if local.nrows() != d_site || local.ncols() != d_site {
            return Err(Error::DimensionMismatch {
                expected: d_site,
                found: local.nrows(),
            });
        }
        let inner = layout.stride(site);
        let outer = layout.total_dim() / (d_site * inner);
        let d = layout.total_dim();
        let mut matrix = CMatrix::zeros(d, d);
        for o in 0..outer {
            for a in 0..d_site {
                for b in 0..d_site {
                    let v = local[(a, b)];
                    if v == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let row0 = (o * d_site + a) * inner;
                    let col0 = (o * d_site + b) * inner;
                    for i in 0..inner {
                        matrix[(row0 + i, col0 + i)] = v;
                    }
                }
            }
        }
        let is_diag = (0..d_site).all(|a| (0..d_site).all(|b| a == b || local[(a, b)].norm() == 0.0));
        let herm = max_abs(&(local - local.adjoint())) == 0.0;
        let unitary = max_abs(&(local.adjoint() * local - CMatrix::identity(d_site, d_site))) < 1e-14;
        Ok(Self {
            layout: layout.clone(),
            matrix,
            flags: OpFlags {
                hermitian: herm,
                unitary,
                diagonal: is_diag,
            },
        })
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn flags(&self) -> OpFlags {
        self.flags
    }

    pub fn with_flags(mut self, flags: OpFlags) -> Self {
        self.flags = flags;
        self
    }

    pub fn dim(&self) -> usize {
        self.layout.total_dim()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            matrix: self.matrix.adjoint(),
            flags: self.flags,
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut flags = self.flags;
        flags.hermitian &= factor.im == 0.0;
        flags.unitary &= (factor.norm() - 1.0).abs() < 1e-15;
        Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * factor,
            flags,
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &LinearOp) -> Result<Self> {
        self.check_layout(rhs.layout())?;
        Ok(Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * &rhs.matrix,
            flags: OpFlags {
                hermitian: false,
                unitary: self.flags.unitary && rhs.flags.unitary,
                diagonal: self.flags.diagonal && rhs.flags.diagonal,
            },
        })
    }

    pub fn try_add(&self, rhs: &LinearOp) -> Result<Self> {
        self.check_layout(rhs.layout())?;
        Ok(Self {
            layout: self.layout.clone(),
            matrix: &self.matrix + &rhs.matrix,
            flags: OpFlags {
                hermitian: self.flags.hermitian && rhs.flags.hermitian,
                unitary: false,
                diagonal: self.flags.diagonal && rhs.flags.diagonal,
            },
        })
    }

    pub fn try_sub(&self, rhs: &LinearOp) -> Result<Self> {
        self.try_add(&rhs.scale_real(-1.0))
    }

    /// `M·ψ`. Normalization is not enforced.
    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        self.check_layout(state.layout())?;
        Ok(QuantumState::from_raw(
            self.layout.clone(),
            &self.matrix * state.amplitudes(),
        ))
    }

    /// `‖M − M†‖_max`.
    pub fn hermiticity_error(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    /// `‖M†M − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        max_abs(&(self.matrix.adjoint() * &self.matrix - CMatrix::identity(d, d)))
    }

    pub fn max_abs_diff(&self, other: &LinearOp) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }

    /// `‖[A, B]‖_max`.
    pub fn commutator_norm(&self, other: &LinearOp) -> f64 {
        max_abs(&(&self.matrix * &other.matrix - &other.matrix * &self.matrix))
    }

    /// Diagonal entries, meaningful when the operator is diagonal.
    pub fn diagonal(&self) -> Vec<C64> {
        self.matrix.diagonal().iter().copied().collect()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.matrix[(i, j)].norm() <= tol))
    }

    /// Sets the Hermitian flag after verifying it.
    pub fn assert_hermitian(mut self, tol: f64) -> Result<Self> {
        let err = self.hermiticity_error();
        if err >= tol {
            return Err(Error::NotHermitian(err));
        }
        self.flags.hermitian = true;
        Ok(self)
    }

    fn check_layout(&self, other: &SpaceLayout) -> Result<()> {
        if &self.layout != other {
            return Err(Error::LayoutMismatch);
        }
        Ok(())
    }
}

impl Add for &LinearOp {
    type Output = LinearOp;

    fn add(self, rhs: &LinearOp) -> LinearOp {
        self.try_add(rhs).expect("layout mismatch in operator sum")
    }
}

impl Sub for &LinearOp {
    type Output = LinearOp;

    fn sub(self, rhs: &LinearOp) -> LinearOp {
        self.try_sub(rhs).expect("layout mismatch in operator difference")
    }
}

impl Mul for &LinearOp {
    type Output = LinearOp;

    fn mul(self, rhs: &LinearOp) -> LinearOp {
        self.compose(rhs).expect("layout mismatch in operator product")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{c, local, Factor};

    #[test]
    fn embed_identity_gives_identity() {
        let l = SpaceLayout::qubits(2);
        let op = LinearOp::embed_local(&l, 0, &local::identity(2)).unwrap();
        assert_eq!(op.max_abs_diff(&LinearOp::identity(&l)), 0.0);
    }

    #[test]
    fn embed_sigma_z_on_second_qubit() {
        let l = SpaceLayout::qubits(2);
        let op = LinearOp::embed_local(&l, 1, &local::sigma_z()).unwrap();
        let diag: Vec<f64> = op.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(diag, vec![1.0, -1.0, 1.0, -1.0]);
        assert!(op.flags().diagonal && op.flags().hermitian);
    }

    #[test]
    fn embed_annihilation_matches_kronecker_oracle() {
        let l = SpaceLayout::new(vec![Factor::Qubit, Factor::CavityMode { n_max: 2 }]).unwrap();
        let op = LinearOp::embed_local(&l, 1, &local::annihilation(2)).unwrap();
        // brute-force I₂ ⊗ a
        let a = local::annihilation(2);
        let oracle = local::identity(2).kronecker(&a);
        assert_eq!(op.matrix(), &oracle);
        assert_eq!(op.matrix()[(0, 1)], c(1.0, 0.0));
        assert_eq!(op.matrix()[(1, 2)], c(2f64.sqrt(), 0.0));
        assert_eq!(op.matrix()[(3, 4)], c(1.0, 0.0));
        assert_eq!(op.matrix()[(4, 5)], c(2f64.sqrt(), 0.0));
    }

    #[test]
    fn embed_errors() {
        let l = SpaceLayout::qubits(2);
        assert!(matches!(
            LinearOp::embed_local(&l, 2, &local::sigma_z()),
            Err(Error::SiteOutOfRange { .. })
        ));
        assert!(matches!(
            LinearOp::embed_local(&l, 0, &local::annihilation(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn apply_rejects_other_layout() {
        let op = LinearOp::identity(&SpaceLayout::qubits(2));
        let psi = QuantumState::basis(&SpaceLayout::qubits(3), &[0, 0, 0]).unwrap();
        assert!(matches!(op.apply(&psi), Err(Error::LayoutMismatch)));
    }
}
