//! Dense complex linear algebra for small quantum systems (dimension ≤ 64).

pub mod bloch;
mod density;
mod eig;
mod matrix;

pub use bloch::{bloch_to_obs, obs_to_bloch, pauli, Vec3};
pub use density::{
    partial_trace, partial_trace_matrix, partial_transpose, partial_transpose_matrix, permute_subsystems,
    subsystem_permutation, DensityMatrix,
};
pub use eig::{eigvalsh, herm_eig, trace_norm, HermEig};
pub use matrix::{tensor, ComplexMatrix, C64};
