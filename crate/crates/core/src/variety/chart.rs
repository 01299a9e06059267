//! Stratum patches: parameterizations with derivative callbacks, covering
//! multiplicity, and region-aware Monte-Carlo samplers.
//!
//! The sampler contract: `sample(rng, region)` draws a parameter point `u`
//! with `weight = 1 / density(u)` (density w.r.t. Lebesgue measure on the
//! parameter domain), and its support covers the preimage of `region`. The
//! integrator always applies the ambient region indicator, so samplers may
//! over-cover; exact samplers (linear charts) never waste a draw.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

/// Ambient integration region, centered at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Ball { r: f64 },
    /// `lo < |x| ≤ hi`.
    Annulus { lo: f64, hi: f64 },
}

impl Region {
    pub fn contains(&self, radius: f64) -> bool {
        match *self {
            Region::Ball { r } => radius <= r,
            Region::Annulus { lo, hi } => radius > lo && radius <= hi,
        }
    }

    pub fn outer(&self) -> f64 {
        match *self {
            Region::Ball { r } => r,
            Region::Annulus { hi, .. } => hi,
        }
    }

    pub fn inner(&self) -> f64 {
        match *self {
            Region::Ball { .. } => 0.0,
            Region::Annulus { lo, .. } => lo,
        }
    }

    fn key(&self) -> (u64, u64) {
        (self.inner().to_bits(), self.outer().to_bits())
    }
}

/// A weighted parameter-domain draw.
#[derive(Debug, Clone)]
pub struct SamplePoint {
    pub param: DVector<f64>,
    pub weight: f64,
}

/// A point on a stratum, addressed through one of its charts.
#[derive(Debug, Clone)]
pub struct ChartPoint {
    pub stratum: usize,
    pub chart: usize,
    pub param: DVector<f64>,
}

type MapFn = dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync;
type JacFn = dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync;
type HessFn = dyn Fn(&DVector<f64>) -> Vec<DMatrix<f64>> + Send + Sync;
type SamplerFn = dyn Fn(&mut ChaCha8Rng, &Region) -> Option<SamplePoint> + Send + Sync;

/// One parameterized patch of a stratum.
#[derive(Clone)]
pub struct Chart {
    pub param_dim: usize,
    pub ambient_dim: usize,
    /// Covering multiplicity of the map onto its image; integrals divide by it.
    pub sheet_count: u32,
    /// Affine image: Jacobian constant, Hessian identically zero.
    pub is_affine: bool,
    /// Parameter-domain bound |u| ≤ domain_radius.
    pub domain_radius: f64,
    map: Arc<MapFn>,
    jacobian: Option<Arc<JacFn>>,
    hessian: Option<Arc<HessFn>>,
    sampler: Arc<SamplerFn>,
}

impl std::fmt::Debug for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Chart")
            .field("param_dim", &self.param_dim)
            .field("ambient_dim", &self.ambient_dim)
            .field("sheet_count", &self.sheet_count)
            .field("is_affine", &self.is_affine)
            .finish()
    }
}

impl Chart {
    pub fn point(&self, u: &DVector<f64>) -> DVector<f64> {
        (self.map)(u)
    }

    pub fn ambient_radius(&self, u: &DVector<f64>) -> f64 {
        self.point(u).norm()
    }

    pub fn jacobian_at(&self, u: &DVector<f64>) -> DMatrix<f64> {
        match &self.jacobian {
            Some(j) => j(u),
            None => fd_jacobian(&*self.map, u, self.ambient_dim),
        }
    }

    /// Finite-difference Jacobian regardless of analytic callbacks; the
    /// independent oracle used by chart validation.
    pub fn fd_jacobian_at(&self, u: &DVector<f64>) -> DMatrix<f64> {
        fd_jacobian(&*self.map, u, self.ambient_dim)
    }

    /// Second derivatives as one m×m matrix per ambient coordinate.
    pub fn hessian_at(&self, u: &DVector<f64>) -> Vec<DMatrix<f64>> {
        if self.is_affine {
            return vec![DMatrix::zeros(self.param_dim, self.param_dim); self.ambient_dim];
        }
        match &self.hessian {
            Some(h) => h(u),
            None => fd_hessian(&*self.map, u, self.ambient_dim),
        }
    }

    pub fn fd_hessian_at(&self, u: &DVector<f64>) -> Vec<DMatrix<f64>> {
        fd_hessian(&*self.map, u, self.ambient_dim)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng, region: &Region) -> Option<SamplePoint> {
        (self.sampler)(rng, region)
    }

    /// Gram area element √det(JᵀJ) at `u`.
    pub fn gram_sqrt(&self, u: &DVector<f64>) -> f64 {
        let j = self.jacobian_at(u);
        gram_sqrt_of(&j)
    }

    /// Radius `ρ` with `|φ(ρ·ω)| = target` along the ray `ω`, by bisection.
    /// Requires radial monotonicity along rays (true of every builtin chart);
    /// returns None if the ray never reaches `target` inside the domain.
    pub fn radial_solve(&self, omega: &DVector<f64>, target: f64) -> Option<f64> {
        let mut hi = self.domain_radius;
        if self.ambient_radius(&(omega * hi)) < target {
            return None;
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.ambient_radius(&(omega * mid)) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * self.domain_radius {
                break;
            }
        }
        Some(0.5 * (lo + hi))
    }
}

pub(crate) fn gram_sqrt_of(j: &DMatrix<f64>) -> f64 {
    let g = j.transpose() * j;
    g.determinant().max(0.0).sqrt()
}

fn fd_step(u: f64) -> f64 {
    f64::EPSILON.cbrt() * (1.0 + u.abs())
}

fn fd_jacobian(map: &MapFn, u: &DVector<f64>, ambient: usize) -> DMatrix<f64> {
    let m = u.len();
    let mut j = DMatrix::zeros(ambient, m);
    for a in 0..m {
        let h = fd_step(u[a]);
        let mut up = u.clone();
        let mut dn = u.clone();
        up[a] += h;
        dn[a] -= h;
        let d = (map(&up) - map(&dn)) / (2.0 * h);
        j.set_column(a, &d);
    }
    j
}

fn fd_hessian(map: &MapFn, u: &DVector<f64>, ambient: usize) -> Vec<DMatrix<f64>> {
    let m = u.len();
    let f0 = map(u);
    let mut out = vec![DMatrix::zeros(m, m); ambient];
    for a in 0..m {
        let ha = fd_step(u[a]);
        for b in a..m {
            let hb = fd_step(u[b]);
            let d = if a == b {
                let mut up = u.clone();
                let mut dn = u.clone();
                up[a] += ha;
                dn[a] -= ha;
                (map(&up) + map(&dn) - &f0 * 2.0) / (ha * ha)
            } else {
                let mut pp = u.clone();
                let mut pm = u.clone();
                let mut mp = u.clone();
                let mut mm = u.clone();
                pp[a] += ha;
                pp[b] += hb;
                pm[a] += ha;
                pm[b] -= hb;
                mp[a] -= ha;
                mp[b] += hb;
                mm[a] -= ha;
                mm[b] -= hb;
                (map(&pp) - map(&pm) - map(&mp) + map(&mm)) / (4.0 * ha * hb)
            };
            for c in 0..ambient {
                out[c][(a, b)] = d[c];
                out[c][(b, a)] = d[c];
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Constructors and samplers
// ---------------------------------------------------------------------------

/// Uniform draw from the annulus `lo < |u| ≤ hi` in ℝ^m; returns the point and
/// the annulus volume (the reciprocal density).
pub(crate) fn uniform_annulus(rng: &mut ChaCha8Rng, m: usize, lo: f64, hi: f64) -> (DVector<f64>, f64) {
    let dir = crate::mathkit::sample_unit_sphere(rng, m);
    let u: f64 = rng.gen();
    let r = (lo.powi(m as i32) + u * (hi.powi(m as i32) - lo.powi(m as i32))).powf(1.0 / m as f64);
    let vol = crate::mathkit::ball_volume(m).expect("small m") * (hi.powi(m as i32) - lo.powi(m as i32));
    (dir * r, vol)
}

impl Chart {
    /// Isometric linear embedding `u ↦ A·u`; `A` must have orthonormal columns.
    pub fn linear(cols: DMatrix<f64>, domain_radius: f64) -> Self {
        let m = cols.ncols();
        let n = cols.nrows();
        let gram = cols.transpose() * &cols;
        debug_assert!((gram - DMatrix::identity(m, m)).norm() < 1e-12, "columns not orthonormal");
        let a = cols.clone();
        let jac = cols.clone();
        Chart {
            param_dim: m,
            ambient_dim: n,
            sheet_count: 1,
            is_affine: true,
            domain_radius,
            map: Arc::new(move |u: &DVector<f64>| &a * u),
            jacobian: Some(Arc::new(move |_: &DVector<f64>| jac.clone())),
            hessian: Some(Arc::new(move |u: &DVector<f64>| {
                vec![DMatrix::zeros(u.len(), u.len()); n]
            })),
            sampler: Arc::new(move |rng: &mut ChaCha8Rng, region: &Region| {
                let (u, vol) = uniform_annulus(rng, m, region.inner(), region.outer());
                Some(SamplePoint { param: u, weight: vol })
            }),
        }
    }

    /// Chart of a zero-dimensional stratum sitting at `point`.
    pub fn point_mass(point: DVector<f64>) -> Self {
        let n = point.len();
        Chart {
            param_dim: 0,
            ambient_dim: n,
            sheet_count: 1,
            is_affine: true,
            domain_radius: 0.0,
            map: Arc::new(move |_: &DVector<f64>| point.clone()),
            jacobian: Some(Arc::new(move |_: &DVector<f64>| DMatrix::zeros(n, 0))),
            hessian: Some(Arc::new(move |_: &DVector<f64>| Vec::new())),
            sampler: Arc::new(|_: &mut ChaCha8Rng, _: &Region| {
                Some(SamplePoint { param: DVector::zeros(0), weight: 1.0 })
            }),
        }
    }

    /// General chart from callbacks plus a sampler chosen by the builder
    /// helpers below.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        param_dim: usize,
        ambient_dim: usize,
        sheet_count: u32,
        is_affine: bool,
        domain_radius: f64,
        map: Arc<MapFn>,
        jacobian: Option<Arc<JacFn>>,
        hessian: Option<Arc<HessFn>>,
        sampler: Arc<SamplerFn>,
    ) -> Self {
        Chart {
            param_dim,
            ambient_dim,
            sheet_count,
            is_affine,
            domain_radius,
            map,
            jacobian,
            hessian,
            sampler,
        }
    }

    /// Sampler for charts whose ambient radius depends only on `|u|`:
    /// `|φ(u)| = g(|u|)` with `g` strictly increasing. The region preimage is
    /// exactly a parameter annulus, so no draw is wasted.
    pub fn exact_radial_sampler(
        m: usize,
        g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        domain_radius: f64,
    ) -> Arc<SamplerFn> {
        Arc::new(move |rng: &mut ChaCha8Rng, region: &Region| {
            let lo = invert_monotone(&*g, region.inner(), domain_radius)?;
            let hi = invert_monotone(&*g, region.outer(), domain_radius)?;
            let (u, vol) = uniform_annulus(rng, m, lo, hi);
            Some(SamplePoint { param: u, weight: vol })
        })
    }

    /// Sampler for `|φ(rω)| = r^degree · h(ω)` with `h ∈ [h_min, h_max]`:
    /// draws from the exact bracket annulus; the integrator's indicator trims
    /// the over-coverage.
    pub fn homogeneous_sampler(m: usize, degree: f64, h_min: f64, h_max: f64) -> Arc<SamplerFn> {
        Arc::new(move |rng: &mut ChaCha8Rng, region: &Region| {
            let lo = (region.inner() / h_max).powf(1.0 / degree);
            let hi = (region.outer() / h_min).powf(1.0 / degree);
            let (u, vol) = uniform_annulus(rng, m, lo, hi);
            Some(SamplePoint { param: u, weight: vol })
        })
    }

    /// Probe-based bracket sampler for radially monotone charts without a
    /// closed-form profile. Brackets are cached per region.
    pub fn probed_sampler(
        map: Arc<MapFn>,
        m: usize,
        domain_radius: f64,
        safety: f64,
    ) -> Arc<SamplerFn> {
        let cache: RwLock<BTreeMap<(u64, u64), (f64, f64)>> = RwLock::new(BTreeMap::new());
        let probes: Vec<DVector<f64>> = {
            let streams = crate::mathkit::Streams::new(0x9A11_AD00);
            (0..96)
                .map(|i| {
                    let mut rng = streams.stream("probe", i);
                    crate::mathkit::sample_unit_sphere(&mut rng, m)
                })
                .collect()
        };
        Arc::new(move |rng: &mut ChaCha8Rng, region: &Region| {
            let key = region.key();
            let bracket = {
                let hit = cache.read().expect("probe cache poisoned").get(&key).copied();
                match hit {
                    Some(b) => b,
                    None => {
                        let mut lo = f64::INFINITY;
                        let mut hi: f64 = 0.0;
                        for p in &probes {
                            if region.inner() > 0.0 {
                                if let Some(r) =
                                    ray_solve(&*map, p, region.inner(), domain_radius)
                                {
                                    lo = lo.min(r);
                                }
                            } else {
                                lo = 0.0;
                            }
                            if let Some(r) = ray_solve(&*map, p, region.outer(), domain_radius) {
                                hi = hi.max(r);
                            } else {
                                hi = domain_radius;
                            }
                        }
                        if !lo.is_finite() {
                            lo = 0.0;
                        }
                        let b = ((lo / safety).max(0.0), (hi * safety).min(domain_radius));
                        cache.write().expect("probe cache poisoned").insert(key, b);
                        b
                    }
                }
            };
            if bracket.1 <= bracket.0 {
                return None;
            }
            let (u, vol) = uniform_annulus(rng, m, bracket.0, bracket.1);
            Some(SamplePoint { param: u, weight: vol })
        })
    }
}

fn invert_monotone(g: &(dyn Fn(f64) -> f64 + Send + Sync), target: f64, hi_bound: f64) -> Option<f64> {
    if target <= 0.0 {
        return Some(0.0);
    }
    if g(hi_bound) < target {
        return None;
    }
    let (mut lo, mut hi) = (0.0, hi_bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi_bound {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

fn ray_solve(map: &MapFn, omega: &DVector<f64>, target: f64, domain_radius: f64) -> Option<f64> {
    let radius_at = |rho: f64| map(&(omega * rho)).norm();
    if radius_at(domain_radius) < target {
        return None;
    }
    let (mut lo, mut hi) = (0.0, domain_radius);
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if radius_at(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::Streams;

    #[test]
    fn linear_chart_samples_exactly() {
        // Plane x-y in ℝ³.
        let cols = DMatrix::from_columns(&[
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
        ]);
        let chart = Chart::linear(cols, 2.0);
        let streams = Streams::new(1);
        let region = Region::Annulus { lo: 0.25, hi: 0.5 };
        let mut total = 0.0;
        let n = 2000;
        for i in 0..n {
            let mut rng = streams.stream("s", i);
            let s = chart.sample(&mut rng, &region).unwrap();
            let x = chart.point(&s.param);
            assert!(region.contains(x.norm()), "exact sampler never over-covers");
            total += s.weight * chart.gram_sqrt(&s.param);
        }
        let est = total / n as f64;
        let exact = std::f64::consts::PI * (0.25 - 0.0625);
        assert!((est - exact).abs() < 1e-12, "area estimate {est} vs {exact}");
    }

    #[test]
    fn fd_matches_analytic_on_quadratic_map() {
        let map: Arc<MapFn> = Arc::new(|u: &DVector<f64>| {
            DVector::from_vec(vec![u[0], u[1], u[0] * u[0] - u[1] * u[1], u[0] * u[1]])
        });
        let chart = Chart::from_parts(
            2,
            4,
            1,
            false,
            2.0,
            map.clone(),
            None,
            None,
            Chart::probed_sampler(map, 2, 2.0, 1.3),
        );
        let u = DVector::from_vec(vec![0.3, -0.2]);
        let j = chart.jacobian_at(&u);
        assert!((j[(2, 0)] - 0.6).abs() < 1e-6);
        assert!((j[(3, 1)] - 0.3).abs() < 1e-6);
        let h = chart.hessian_at(&u);
        assert!((h[2][(0, 0)] - 2.0).abs() < 1e-5);
        assert!((h[2][(1, 1)] + 2.0).abs() < 1e-5);
        assert!((h[3][(0, 1)] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn radial_solve_finds_sphere_crossing() {
        let cols = DMatrix::identity(3, 2);
        let chart = Chart::linear(cols, 4.0);
        let omega = DVector::from_vec(vec![1.0, 0.0]);
        let r = chart.radial_solve(&omega, 0.7).unwrap();
        assert!((r - 0.7).abs() < 1e-12);
    }
}
