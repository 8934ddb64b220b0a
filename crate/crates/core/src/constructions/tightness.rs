//! The block matrix `[[E + A′, E − A′], [E − A′, E + A′]]`, `a′_ij = 1/√(ij)`.

use crate::discrepancy::{DiscMode, DiscResult};
use crate::linalg::SymmetricMatrix;

/// `ξ_k = Σ_{i ≤ k} 1/i`.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

fn inv_sqrt_product(i: usize, j: usize) -> f64 {
    1.0 / ((i * j) as f64).sqrt()
}

/// The `2k × 2k` tightness matrix.
pub fn tightness_matrix(k: usize) -> SymmetricMatrix {
    assert!(k >= 1, "k must be positive");
    SymmetricMatrix::from_fn(2 * k, |i, j| {
        let a = inv_sqrt_product(i % k + 1, j % k + 1);
        if (i < k) == (j < k) {
            1.0 + a
        } else {
            1.0 - a
        }
    })
}

/// `y_i = 1/√i` on the first half and `−1/√(i − k)` on the second, so that
/// `⟨Ay, y⟩ = 4ξ_k²` and `‖y‖² = 2ξ_k`.
pub fn tightness_step_vector(k: usize) -> Vec<f64> {
    (0..2 * k)
        .map(|i| {
            let v = 1.0 / ((i % k + 1) as f64).sqrt();
            if i < k {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// `disc` of the tightness matrix in `O(k)`.
///
/// The extremal pair sits in a corner block and consists of initial
/// segments, giving `max_a S(a)²/a` with `S(a) = Σ_{i ≤ a} 1/√i`.
pub fn tightness_disc_structured(k: usize) -> DiscResult {
    assert!(k >= 1, "k must be positive");
    let mut s = 0.0;
    let mut best = (0.0, 1);
    for a in 1..=k {
        s += 1.0 / (a as f64).sqrt();
        let v = s * s / a as f64;
        if v > best.0 {
            best = (v, a);
        }
    }
    let witness: Vec<usize> = (0..best.1).collect();
    DiscResult {
        value: best.0,
        witness_x: witness.clone(),
        witness_y: witness,
        mode: DiscMode::Exact,
        evaluations: k as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_one() {
        assert_eq!(tightness_matrix(1), SymmetricMatrix::diagonal(&[2.0, 2.0]));
        assert_eq!(tightness_disc_structured(1).value, 1.0);
    }

    #[test]
    fn rows_sum_to_n() {
        let a = tightness_matrix(5);
        for s in a.row_sums() {
            assert!((s - 10.0).abs() < 1e-12);
        }
        assert!((a.rho_prime() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn step_vector_identities() {
        for k in [1, 3, 8] {
            let a = tightness_matrix(k);
            let y = tightness_step_vector(k);
            let xi = harmonic(k);
            assert!(y.iter().sum::<f64>().abs() < 1e-12);
            assert!((a.quadratic_form(&y) - 4.0 * xi * xi).abs() < 1e-10);
            assert!((a.rayleigh_quotient(&y).unwrap() - 2.0 * xi).abs() < 1e-12);
        }
    }

    #[test]
    fn structured_value_stays_below_four() {
        assert!(tightness_disc_structured(10_000).value < 4.0);
    }
}
