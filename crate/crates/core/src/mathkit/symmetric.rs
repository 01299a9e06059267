//! Elementary symmetric functions, by direct expansion and from power sums.

use crate::error::{Error, Result};

/// `σ_j` of the inputs, with the convention `σ_0 = 1`.
pub fn elementary_symmetric(values: &[f64], j: usize) -> Result<f64> {
    if j > values.len() {
        return Err(Error::Domain(format!(
            "elementary symmetric index {j} exceeds {} inputs",
            values.len()
        )));
    }
    Ok(elementary_symmetric_all(values)[j])
}

/// All `σ_0..σ_m` at once via the product expansion `Π (1 + λ_i t)`.
pub fn elementary_symmetric_all(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (i, &v) in values.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += e[j - 1] * v;
        }
    }
    e
}

/// All `σ_0..σ_m` from the power sums `p_1..p_m` via the Newton recurrence
/// `j·e_j = Σ_{i=1..j} (-1)^{i-1} e_{j-i} p_i`.
///
/// This is the hot path used on second-fundamental-form matrices, where the
/// power sums are traces of matrix powers and no eigendecomposition is needed.
pub fn elementary_from_power_sums(power_sums: &[f64]) -> Vec<f64> {
    let m = power_sums.len();
    let mut e = vec![0.0; m + 1];
    e[0] = 1.0;
    for j in 1..=m {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for i in 1..=j {
            acc += sign * e[j - i] * power_sums[i - 1];
            sign = -sign;
        }
        e[j] = acc / j as f64;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frozen_values() {
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0], 2).unwrap(), 11.0);
        assert_eq!(elementary_symmetric(&[4.0, -7.0], 0).unwrap(), 1.0);
        assert!(elementary_symmetric(&[1.0], 2).is_err());
    }

    #[test]
    fn equal_eigenvalues_binomial() {
        // σ_j(λ,…,λ) over m slots is C(m,j) λ^j.
        let lam = 0.75;
        let m = 6;
        let vals = vec![lam; m];
        let mut choose = 1.0;
        for j in 0..=m {
            let expect = choose * lam.powi(j as i32);
            assert!((elementary_symmetric(&vals, j).unwrap() - expect).abs() < 1e-12);
            choose = choose * (m - j) as f64 / (j + 1) as f64;
        }
    }

    proptest! {
        #[test]
        fn newton_recurrence_cross_check(vals in proptest::collection::vec(-3.0f64..3.0, 1..7)) {
            let direct = elementary_symmetric_all(&vals);
            let power_sums: Vec<f64> = (1..=vals.len())
                .map(|k| vals.iter().map(|v| v.powi(k as i32)).sum())
                .collect();
            let from_ps = elementary_from_power_sums(&power_sums);
            for (a, b) in direct.iter().zip(from_ps.iter()) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
            }
        }
    }
}
