//! Brute-force references: a voxel double sum for E_G and a small-N
//! master-equation integrator for the NOON decay laws.

pub mod lindblad;
pub mod voxel;

pub use lindblad::{fit_decay_exponent, lindblad_decay, HamiltonianRates, LindbladTrace};
pub use voxel::{eg_bruteforce, eg_bruteforce_with, eg_voxel_level, VoxelGrid, VoxelOptions};
