//! Composite Hilbert spaces: layouts, pure states, dense operators,
//! reduced density matrices and entanglement entropy.
//!
//! Every space is a row-major tensor product of qubits and truncated cavity
//! modes. Full atom–cavity spaces put the atoms first, then the modes, each
//! in site order.

mod density;
mod layout;
pub mod local;
mod operator;
mod state;

pub use density::{entanglement_entropy, partial_trace, DensityMatrix, EIGENVALUE_FLOOR};
pub use layout::{Factor, SpaceLayout};
pub use operator::{LinearOp, OpFlags};
pub use state::{fidelity, QuantumState, NORM_TOLERANCE};

pub use num_complex::Complex64 as C64;

pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
