//! Eigenvalues of small symmetric matrices by cyclic Jacobi rotations.
//!
//! Matrices here never exceed a handful of rows (second fundamental forms and
//! reduced Hessians), so Jacobi sweeps to a 1e-12 off-diagonal residual are
//! both fast and accurate.

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Eigenvalues of a symmetric matrix, sorted ascending.
///
/// Fails if the input is asymmetric beyond `tol·‖M‖`.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>, tol: f64) -> Result<Vec<f64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Shape(format!("matrix is {}x{}, not square", n, m.ncols())));
    }
    let scale = m.norm().max(f64::MIN_POSITIVE);
    for i in 0..n {
        for j in i + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > tol.max(1e-14) * scale {
                return Err(Error::Shape(format!(
                    "matrix asymmetric at ({i},{j}): {} vs {}",
                    m[(i, j)],
                    m[(j, i)]
                )));
            }
        }
    }
    let mut a = m.clone();
    // Symmetrize before sweeping so the tolerated asymmetry does not leak in.
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    jacobi_in_place(&mut a, tol);
    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eigs)
}

/// Count of strictly negative eigenvalues (Morse index of a Hessian block).
/// Eigenvalues with |λ| ≤ `degeneracy_tol` are reported separately.
pub(crate) fn negative_count(m: &DMatrix<f64>, degeneracy_tol: f64) -> (usize, usize) {
    let mut a = m.clone();
    jacobi_in_place(&mut a, 1e-13);
    let mut neg = 0;
    let mut null = 0;
    for i in 0..a.nrows() {
        let lam = a[(i, i)];
        if lam.abs() <= degeneracy_tol {
            null += 1;
        } else if lam < 0.0 {
            neg += 1;
        }
    }
    (neg, null)
}

fn jacobi_in_place(a: &mut DMatrix<f64>, tol: f64) {
    let n = a.nrows();
    if n < 2 {
        return;
    }
    let scale = a.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[(i, j)] * a[(i, j)];
            }
        }
        if off.sqrt() <= tol.max(1e-15) * scale {
            return;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;
    use proptest::prelude::*;

    #[test]
    fn frozen_cases() {
        let id = DMatrix::<f64>::identity(3, 3);
        assert_eq!(symmetric_eigenvalues(&id, 1e-12).unwrap(), vec![1.0, 1.0, 1.0]);

        let d = dmatrix![3.0, 0.0; 0.0, -1.0];
        assert_eq!(symmetric_eigenvalues(&d, 1e-12).unwrap(), vec![-1.0, 3.0]);

        let refl = dmatrix![0.0, 1.0; 1.0, 0.0];
        let e = symmetric_eigenvalues(&refl, 1e-12).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-13 && (e[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn asymmetric_rejected() {
        let m = dmatrix![0.0, 1.0; 0.5, 0.0];
        assert!(symmetric_eigenvalues(&m, 1e-12).is_err());
    }

    proptest! {
        #[test]
        fn trace_and_det(entries in proptest::collection::vec(-2.0f64..2.0, 6)) {
            // Random symmetric 3x3: eigenvalue sum = trace, product = det.
            let m = dmatrix![
                entries[0], entries[1], entries[2];
                entries[1], entries[3], entries[4];
                entries[2], entries[4], entries[5]
            ];
            let e = symmetric_eigenvalues(&m, 1e-12).unwrap();
            let tr: f64 = e.iter().sum();
            let det: f64 = e.iter().product();
            prop_assert!((tr - m.trace()).abs() <= 1e-10 * (1.0 + m.trace().abs()));
            prop_assert!((det - m.determinant()).abs() <= 1e-10 * (1.0 + m.determinant().abs()));
        }
    }
}
