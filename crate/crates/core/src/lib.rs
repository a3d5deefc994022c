//! Simulation of two-level atoms in an array of coupled, driven microcavities.
//!
//! The crate builds the full atom–cavity Hamiltonian, derives the effective
//! Ising spin–spin model obtained by eliminating the far-detuned photons,
//! evolves both, and generates and verifies atomic cluster states.
//!
//! Units: rates in GHz, times in ns, ħ = 1.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cluster;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod model;

pub use error::{Error, Result};
