//! Small single-factor matrices.
//!
//! Qubit matrices use the basis order (index 0, index 1). For bare atoms that
//! is (|g⟩, |e⟩); in the dressed basis it is (|↓⟩, |↑⟩), so `sigma_z` is
//! |↓⟩⟨↓| − |↑⟩⟨↑|.

use nalgebra::DMatrix;

use super::{c, CMatrix, C64};

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn sigma_x() -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn sigma_y() -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn sigma_z() -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// |1⟩⟨0|. For a bare atom this is S⁺ = |e⟩⟨g|; in the dressed basis it is
/// σ⁺ = |↑⟩⟨↓|.
pub fn raising() -> CMatrix {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

/// |0⟩⟨1|.
pub fn lowering() -> CMatrix {
    raising().adjoint()
}

/// |index⟩⟨index| on a `dim`-level factor.
pub fn projector(dim: usize, index: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    m[(index, index)] = C64::new(1.0, 0.0);
    m
}

/// Hadamard. Maps bare amplitudes (c_g, c_e) to dressed amplitudes (c_↓, c_↑).
pub fn hadamard() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

/// Truncated annihilation operator on photon numbers `0..=n_max`.
pub fn annihilation(n_max: usize) -> CMatrix {
    let dim = n_max + 1;
    let mut a = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

pub fn number(n_max: usize) -> CMatrix {
    let dim = n_max + 1;
    CMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |n, _| C64::new(n as f64, 0.0)))
}

/// General single-qubit unitary
/// `[[cos(θ/2), −e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(φ+λ)} cos(θ/2)]]`.
pub fn u3(theta: f64, phi: f64, lambda: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    DMatrix::from_row_slice(
        2,
        2,
        &[
            c(co, 0.0),
            -C64::from_polar(s, lambda),
            C64::from_polar(s, phi),
            C64::from_polar(co, phi + lambda),
        ],
    )
}

/// Angles `(θ, φ, λ)` with `u = e^{iγ}·u3(θ, φ, λ)` for some global phase γ.
/// Where an angle is undetermined (θ = 0 or θ = π) it is set to zero.
pub fn u3_angles(u: &CMatrix) -> (f64, f64, f64) {
    const EPS: f64 = 1e-12;
    let theta = 2.0 * u[(1, 0)].norm().atan2(u[(0, 0)].norm());
    let gamma = if u[(0, 0)].norm() > EPS {
        u[(0, 0)].arg()
    } else {
        (-u[(0, 1)]).arg()
    };
    if u[(1, 0)].norm() <= EPS {
        return (theta, 0.0, u[(1, 1)].arg() - gamma);
    }
    let phi = u[(1, 0)].arg() - gamma;
    let lambda = (-u[(0, 1)]).arg() - gamma;
    (theta, phi, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (sigma_x(), sigma_y(), sigma_z());
        let i = C64::new(0.0, 1.0);
        assert!(max_diff(&(&x * &y), &(&z * i)) < 1e-15);
        assert!(max_diff(&(&x * &x), &identity(2)) < 1e-15);
        assert!(max_diff(&(raising() + lowering()), &x) < 1e-15);
    }

    #[test]
    fn ladder_commutator_below_cutoff() {
        let a = annihilation(4);
        let comm = &a * a.adjoint() - a.adjoint() * &a;
        for n in 0..4 {
            assert!((comm[(n, n)].re - 1.0).abs() < 1e-14);
        }
        assert!(max_diff(&(a.adjoint() * &a), &number(4)) < 1e-14);
    }

    #[test]
    fn u3_angles_recover_unitary_up_to_phase() {
        for &(t, p, l) in &[
            (0.3, 1.1, -2.0),
            (0.0, 0.4, 0.0),
            (std::f64::consts::PI, 0.7, 0.2),
            (2.0, -3.0, 3.0),
        ] {
            let u = u3(t, p, l) * C64::from_polar(1.0, 0.77);
            let (t2, p2, l2) = u3_angles(&u);
            let v = u3(t2, p2, l2);
            // equal up to a global phase
            let overlap = (v.adjoint() * &u).trace().norm() / 2.0;
            assert!((overlap - 1.0).abs() < 1e-12, "{t} {p} {l}");
        }
    }
}
