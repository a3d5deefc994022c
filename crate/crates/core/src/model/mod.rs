//! Physical model: parameters, cavity dispersion, the full / rotating-frame /
//! RWA Hamiltonians, the effective Ising model and its coupling constant.

mod coupling;
mod dispersion;
mod hamiltonians;
mod params;

pub use coupling::{
    calibrate_jz, dispersive_ratio, effective_jz, Calibration, CalibrationOptions, JzConvention, RESONANCE_THRESHOLD,
};
pub use dispersion::{cavity_dispersion, hopping_matrix, normal_modes, KMode, KSpectrum};
pub(crate) use hamiltonians::spins;
pub use hamiltonians::{
    build_ising_hamiltonian, build_lab_hamiltonian, build_rotating_hamiltonian, build_rwa_hamiltonian,
    dressed_basis_transform, full_layout, FourierNormalization, HERMITIAN_TOLERANCE,
};
pub use params::{Boundary, ModelParams, DEFAULT_N_MAX};
