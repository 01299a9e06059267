//! Sample-count and seed configuration shared by all Monte-Carlo paths.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SampleConfig {
    /// Master seed; every stream is derived from it.
    pub seed: u64,
    /// Normal-sphere directions per integration point.
    pub dirs: usize,
    /// Integration points per (stratum, shell).
    pub points: usize,
    /// Points for pure volume integrands (no inner direction loop, so cheap).
    pub volume_points: usize,
    /// Directions for point-stratum atoms (α mean at the germ point).
    pub atom_dirs: usize,
    /// (H, v) draws per polar invariant.
    pub polar_draws: usize,
    /// Newton seeds per slice in polar point counting.
    pub slice_seeds: usize,
    /// Newton seeds per (stratum, direction) in the Morse search.
    pub morse_seeds: usize,
    /// Directions for the sphere-mean boundary identity.
    pub boundary_dirs: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            dirs: 2048,
            points: 4096,
            volume_points: 16384,
            atom_dirs: 65536,
            polar_draws: 384,
            slice_seeds: 64,
            morse_seeds: 128,
            boundary_dirs: 96,
        }
    }
}

impl SampleConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}
