//! Curvature measures of explicitly stratified singular varieties.
//!
//! The library computes Lipschitz-Killing curvature measures `Λ_k(X, ·)` of a
//! Whitney-stratified set given by explicit charts, their scaled limits as the
//! ball radius shrinks to zero (or grows to infinity in the affine-global
//! case), the Comte-Merle polar invariants `σ_k(X,0)`, Euler obstructions via
//! the normal-Morse-index calculus on the stratification poset, and the
//! boundary Gauss-Bonnet apparatus on `X ∩ S_ε` (critical points of generic
//! linear forms, inward/outward classification, Fu's limit).
//!
//! Everything numeric is Monte-Carlo over counter-seeded ChaCha streams, so
//! results are reproducible and independent of thread count. Exact integer
//! combinatorics (Möbius inversion on the closure poset, the `η`/`Eu` duality,
//! the local and global index formulas) are carried out in `i64` arithmetic.

pub mod boundary;
pub mod config;
pub mod constructible;
pub mod curvature;
pub mod error;
pub mod limits;
pub mod mathkit;
pub mod polar;
pub mod report;
pub mod variety;

pub use config::SampleConfig;
pub use error::{Error, Result};
