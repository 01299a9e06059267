//! Haar sampling on spheres, frames and Grassmannians.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// Uniform point on the unit sphere of ℝ^n. For n = 1 this is a fair ±1.
pub fn sample_unit_sphere<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    assert!(n >= 1, "sphere in 0-dimensional space is empty");
    if n == 1 {
        let s: bool = rng.gen();
        return DVector::from_element(1, if s { 1.0 } else { -1.0 });
    }
    loop {
        let v = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}

/// Orthonormal basis of a Haar-random k-plane in ℝ^n: orthogonalized n×k
/// standard Gaussian draw. `k = 0` gives an empty frame.
pub fn sample_grassmannian<R: Rng>(rng: &mut R, n: usize, k: usize) -> Result<DMatrix<f64>> {
    if k > n {
        return Err(Error::Dimension(format!("k-plane with k = {k} > n = {n}")));
    }
    if k == 0 {
        return Ok(DMatrix::zeros(n, 0));
    }
    let g = DMatrix::from_fn(n, k, |_, _| rng.sample::<f64, _>(StandardNormal));
    Ok(orthonormalize(g))
}

/// Haar-random orthogonal frame of ℝ^n (all n columns).
pub fn haar_orthogonal<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    sample_grassmannian(rng, n, n).expect("k = n is always valid")
}

/// Orthonormal basis of the orthogonal complement of the column span of `q`
/// (whose columns must already be orthonormal).
pub fn orthonormal_complement(q: &DMatrix<f64>) -> DMatrix<f64> {
    let n = q.nrows();
    let m = q.ncols();
    let mut basis: Vec<DVector<f64>> = (0..m).map(|j| q.column(j).into_owned()).collect();
    let mut extra: Vec<DVector<f64>> = Vec::with_capacity(n - m);
    for i in 0..n {
        if extra.len() == n - m {
            break;
        }
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        for _ in 0..2 {
            for b in basis.iter().chain(extra.iter()) {
                let c = b.dot(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            extra.push(v / norm);
        }
    }
    assert_eq!(extra.len(), n - m, "complement construction ran out of pivots");
    basis.clear();
    DMatrix::from_columns(&extra)
}

fn orthonormalize(g: DMatrix<f64>) -> DMatrix<f64> {
    // Modified Gram-Schmidt with one re-orthogonalization pass.
    let (n, k) = (g.nrows(), g.ncols());
    let mut cols: Vec<DVector<f64>> = (0..k).map(|j| g.column(j).into_owned()).collect();
    for j in 0..k {
        for _ in 0..2 {
            for i in 0..j {
                let c = cols[i].dot(&cols[j]);
                let prev = cols[i].clone();
                cols[j] -= prev * c;
            }
        }
        let norm = cols[j].norm();
        assert!(norm > 1e-12, "degenerate Gaussian draw");
        cols[j] /= norm;
    }
    let mut out = DMatrix::zeros(n, k);
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::Streams;

    #[test]
    fn frames_are_orthonormal() {
        let s = Streams::new(11);
        for idx in 0..50 {
            let mut rng = s.stream("grass", idx);
            let g = sample_grassmannian(&mut rng, 5, 3).unwrap();
            let gram = g.transpose() * &g;
            let err = (&gram - DMatrix::identity(3, 3)).norm();
            assert!(err < 1e-12, "Gram residual {err}");
        }
    }

    #[test]
    fn degenerate_frames() {
        let s = Streams::new(3);
        let mut rng = s.stream("g", 0);
        let full = sample_grassmannian(&mut rng, 4, 4).unwrap();
        assert!((full.determinant().abs() - 1.0).abs() < 1e-10);
        let empty = sample_grassmannian(&mut rng, 4, 0).unwrap();
        assert_eq!(empty.ncols(), 0);
        assert!(sample_grassmannian(&mut rng, 3, 4).is_err());
    }

    #[test]
    fn projector_trace_statistic() {
        // E⟨e_1, Π_H e_1⟩ = k/n by symmetry; check 1/2 for G(4,2) within 3σ.
        let s = Streams::new(17);
        let draws = 100_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for idx in 0..draws {
            let mut rng = s.stream("proj", idx);
            let g = sample_grassmannian(&mut rng, 4, 2).unwrap();
            let q = g.row(0).norm_squared(); // ⟨e1, G Gᵀ e1⟩
            sum += q;
            sumsq += q * q;
        }
        let n = draws as f64;
        let mean = sum / n;
        let stderr = ((sumsq / n - mean * mean) / n).sqrt();
        assert!(
            (mean - 0.5).abs() <= 3.0 * stderr,
            "mean {mean} stderr {stderr}"
        );
    }

    #[test]
    fn complement_is_orthonormal() {
        let s = Streams::new(5);
        let mut rng = s.stream("c", 0);
        let q = sample_grassmannian(&mut rng, 6, 2).unwrap();
        let c = orthonormal_complement(&q);
        assert_eq!(c.ncols(), 4);
        assert!((c.transpose() * &c - DMatrix::identity(4, 4)).norm() < 1e-10);
        assert!((q.transpose() * &c).norm() < 1e-10);
    }
}
