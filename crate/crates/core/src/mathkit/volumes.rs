//! Volumes of unit balls and spheres.
//!
//! `b_k = π^{k/2} / Γ(k/2 + 1)` is evaluated through the two-step recursion
//! `b_k = b_{k-2} · 2π/k`, which is exact in the sense that it introduces one
//! rounding per step instead of going through `Γ`. Spheres satisfy
//! `s_k = (k+1) b_{k+1}`.

use crate::error::{Error, Result};

/// Default table size; ambient dimensions in this crate stay well below it.
pub const DEFAULT_MAX_DIM: usize = 32;

/// Precomputed unit ball and sphere volumes `b_0..b_max`, `s_0..s_max`.
#[derive(Debug, Clone)]
pub struct VolumeTable {
    pub max_dim: usize,
    pub ball: Vec<f64>,
    pub sphere: Vec<f64>,
}

impl VolumeTable {
    pub fn new(max_dim: usize) -> Self {
        let mut ball = vec![0.0; max_dim + 2];
        ball[0] = 1.0;
        ball[1] = 2.0;
        for k in 2..=max_dim + 1 {
            ball[k] = ball[k - 2] * 2.0 * std::f64::consts::PI / k as f64;
        }
        let sphere = (0..=max_dim + 1)
            .map(|k| {
                if k + 1 <= max_dim + 1 {
                    (k as f64 + 1.0) * ball[k + 1]
                } else {
                    0.0
                }
            })
            .collect::<Vec<_>>();
        // s_{max+1} is never exposed; ball has one spare entry so every
        // exposed sphere value is defined.
        Self { max_dim, ball: ball[..=max_dim].to_vec(), sphere: sphere[..=max_dim].to_vec() }
    }

    pub fn standard() -> &'static Self {
        use std::sync::OnceLock;
        static TABLE: OnceLock<VolumeTable> = OnceLock::new();
        TABLE.get_or_init(|| VolumeTable::new(DEFAULT_MAX_DIM))
    }

    pub fn ball(&self, k: usize) -> Result<f64> {
        self.ball
            .get(k)
            .copied()
            .ok_or_else(|| Error::Dimension(format!("ball volume b_{k} exceeds max_dim {}", self.max_dim)))
    }

    pub fn sphere(&self, k: usize) -> Result<f64> {
        self.sphere
            .get(k)
            .copied()
            .ok_or_else(|| Error::Dimension(format!("sphere volume s_{k} exceeds max_dim {}", self.max_dim)))
    }
}

/// Volume of the unit `k`-ball.
pub fn ball_volume(k: usize) -> Result<f64> {
    VolumeTable::standard().ball(k)
}

/// Volume of the unit `k`-sphere, `s_k = (k+1) b_{k+1}`.
pub fn sphere_volume(k: usize) -> Result<f64> {
    VolumeTable::standard().sphere(k)
}
