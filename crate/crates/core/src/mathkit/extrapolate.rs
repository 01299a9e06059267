//! Ladders and scaling-limit extrapolation.
//!
//! Shrink ladders discretize `lim_{ε→0}`, grow ladders `lim_{R→∞}` (fitted in
//! `1/R`). The fit model is `a + b·x + c·x²`, weighted least squares with the
//! per-point stderr; cone-like germs give exactly constant series and
//! quasi-homogeneous ones analytic-in-ε corrections, so the quadratic model is
//! exact on the corpus and the reported residual exposes any inadequacy.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LadderKind {
    /// Strictly decreasing ε ladder, fit in ε.
    Shrink,
    /// Strictly increasing R ladder, fit in 1/R.
    Grow,
}

/// Log-spaced radius ladder with constant consecutive ratio.
#[derive(Debug, Clone, Serialize)]
pub struct EpsilonLadder {
    pub values: Vec<f64>,
    pub kind: LadderKind,
}

impl EpsilonLadder {
    /// Halving ladder: `start, start/2, …`, `count` points.
    pub fn shrink(start: f64, count: usize) -> Result<Self> {
        Self::with_ratio(start, count, 0.5, LadderKind::Shrink)
    }

    /// Doubling ladder: `start, 2·start, …`, `count` points.
    pub fn grow(start: f64, count: usize) -> Result<Self> {
        Self::with_ratio(start, count, 2.0, LadderKind::Grow)
    }

    pub fn with_ratio(start: f64, count: usize, ratio: f64, kind: LadderKind) -> Result<Self> {
        if count < 5 {
            return Err(Error::Precondition(format!("ladder needs ≥ 5 points, got {count}")));
        }
        if start <= 0.0 || ratio <= 0.0 {
            return Err(Error::Precondition("ladder values must be positive".into()));
        }
        match kind {
            LadderKind::Shrink if ratio >= 1.0 => {
                return Err(Error::Precondition("shrink ladder needs ratio < 1".into()))
            }
            LadderKind::Grow if ratio <= 1.0 => {
                return Err(Error::Precondition("grow ladder needs ratio > 1".into()))
            }
            _ => {}
        }
        let values = (0..count).map(|i| start * ratio.powi(i as i32)).collect();
        Ok(Self { values, kind })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One measured point of a scaling series: radius, value, stderr.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesPoint {
    pub x: f64,
    pub value: f64,
    pub stderr: f64,
}

/// Extrapolated limit with its standard error and weighted fit residual.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LimitEstimate {
    pub value: f64,
    pub stderr: f64,
    pub residual: f64,
}

/// Weighted least-squares fit `value(x) ≈ a + b·x + c·x²`; returns `a`.
/// For a grow ladder the fit variable is `1/x`.
pub fn extrapolate_limit(series: &[SeriesPoint], kind: LadderKind) -> Result<LimitEstimate> {
    if series.len() < 5 {
        return Err(Error::Precondition(format!(
            "extrapolation needs ≥ 5 points, got {}",
            series.len()
        )));
    }
    let xs: Vec<f64> = series
        .iter()
        .map(|p| match kind {
            LadderKind::Shrink => p.x,
            LadderKind::Grow => 1.0 / p.x,
        })
        .collect();

    // Weight floor keeps exact (zero-stderr) series well posed; it is far
    // below any honest Monte-Carlo stderr in this crate.
    let floor = 1e-9
        * series
            .iter()
            .map(|p| p.value.abs())
            .fold(0.0, f64::max)
            .max(1e-6);
    let w: Vec<f64> = series.iter().map(|p| 1.0 / p.stderr.max(floor).powi(2)).collect();

    let mut ata = DMatrix::<f64>::zeros(3, 3);
    let mut atb = DMatrix::<f64>::zeros(3, 1);
    for (i, p) in series.iter().enumerate() {
        let row = [1.0, xs[i], xs[i] * xs[i]];
        for a in 0..3 {
            for b in 0..3 {
                ata[(a, b)] += w[i] * row[a] * row[b];
            }
            atb[(a, 0)] += w[i] * row[a] * p.value;
        }
    }

    // Condition is judged on the x-normalized design so the weights' overall
    // scale (which cancels in the solve) does not trip the bound.
    let xmax = xs.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);
    let mut scaled = ata.clone();
    let scales = [1.0, xmax, xmax * xmax];
    for a in 0..3 {
        for b in 0..3 {
            scaled[(a, b)] /= scales[a] * scales[b];
        }
    }
    let wmax = w.iter().fold(0.0f64, |m, &x| m.max(x));
    scaled /= wmax.max(f64::MIN_POSITIVE);
    let eigs = crate::mathkit::symmetric_eigenvalues(&scaled, 1e-13)?;
    let cond = eigs[2].abs() / eigs[0].abs().max(f64::MIN_POSITIVE);
    if cond > 1e8 {
        return Err(Error::Extrapolation {
            message: format!("ill-conditioned fit: condition number {cond:.3e} > 1e8"),
            series: series.iter().map(|p| (p.x, p.value, p.stderr)).collect(),
        });
    }
    let chol = ata.clone().cholesky().ok_or_else(|| Error::Extrapolation {
        message: "normal equations not positive definite".into(),
        series: series.iter().map(|p| (p.x, p.value, p.stderr)).collect(),
    })?;
    let coef = chol.solve(&atb);
    let a = coef[(0, 0)];

    let mut wss = 0.0;
    for (i, p) in series.iter().enumerate() {
        let fit = coef[(0, 0)] + coef[(1, 0)] * xs[i] + coef[(2, 0)] * xs[i] * xs[i];
        wss += w[i] * (p.value - fit) * (p.value - fit);
    }
    let dof = (series.len() - 3).max(1) as f64;
    // Covariance of â is (AᵀWA)⁻¹ scaled by the residual variance when the
    // declared errors underestimate scatter; use max(1, wss/dof) as the scale.
    let cov00 = chol.inverse()[(0, 0)];
    let stderr = (cov00 * (wss / dof).max(1.0)).sqrt();

    // Unweighted residual in value units, for model-adequacy reporting.
    let mut rss = 0.0;
    for (i, p) in series.iter().enumerate() {
        let fit = coef[(0, 0)] + coef[(1, 0)] * xs[i] + coef[(2, 0)] * xs[i] * xs[i];
        rss += (p.value - fit) * (p.value - fit);
    }
    let residual = (rss / series.len() as f64).sqrt();

    Ok(LimitEstimate { value: a, stderr, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(xs: &[f64], f: impl Fn(f64) -> f64, err: f64) -> Vec<SeriesPoint> {
        xs.iter().map(|&x| SeriesPoint { x, value: f(x), stderr: err }).collect()
    }

    #[test]
    fn constant_series_is_exact() {
        let ladder = EpsilonLadder::shrink(0.4, 8).unwrap();
        let s = pts(&ladder.values, |_| 2.0, 0.0);
        let est = extrapolate_limit(&s, LadderKind::Shrink).unwrap();
        assert!((est.value - 2.0).abs() < 1e-12);
        assert!(est.residual < 1e-12);
    }

    #[test]
    fn model_contains_truth() {
        let ladder = EpsilonLadder::shrink(0.4, 8).unwrap();
        let s = pts(&ladder.values, |x| 2.0 + x, 1e-3);
        let est = extrapolate_limit(&s, LadderKind::Shrink).unwrap();
        assert!((est.value - 2.0).abs() < 1e-10);
        assert!(est.residual < 1e-10);
    }

    #[test]
    fn quadratic_series_is_exact() {
        let ladder = EpsilonLadder::shrink(0.5, 6).unwrap();
        let s = pts(&ladder.values, |x| -1.5 + 3.0 * x - 0.25 * x * x, 1e-4);
        let est = extrapolate_limit(&s, LadderKind::Shrink).unwrap();
        assert!((est.value + 1.5).abs() < 1e-10);
        assert!(est.residual < 1e-12);
    }

    #[test]
    fn grow_ladder_fits_in_reciprocal() {
        let ladder = EpsilonLadder::grow(4.0, 6).unwrap();
        let s = pts(&ladder.values, |r| 1.0 + 3.0 / r, 1e-5);
        let est = extrapolate_limit(&s, LadderKind::Grow).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn short_series_rejected() {
        let s = pts(&[0.4, 0.2, 0.1, 0.05], |_| 1.0, 0.0);
        assert!(extrapolate_limit(&s, LadderKind::Shrink).is_err());
    }

    #[test]
    fn ladder_invariants() {
        let l = EpsilonLadder::shrink(0.4, 8).unwrap();
        assert_eq!(l.len(), 8);
        for w in l.values.windows(2) {
            assert!((w[1] / w[0] - 0.5).abs() < 1e-15);
        }
        assert!(EpsilonLadder::shrink(0.4, 3).is_err());
        assert!(EpsilonLadder::with_ratio(0.4, 8, 2.0, LadderKind::Shrink).is_err());
    }
}
