//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Each rotation annihilates one off-diagonal pair; sweeps visit every pair
//! in row order until the off-diagonal Frobenius norm drops below
//! `1e-12·‖A‖_F`. The loop order is fixed, so results are bit-for-bit
//! reproducible for a given input.

use serde::{Deserialize, Serialize};

use super::{LinalgError, SymmetricMatrix};

/// Relative off-diagonal threshold at which the sweep loop stops.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Rotations allowed per unit of `n²` before giving up.
pub const ROTATION_CAP_FACTOR: usize = 100;

/// Eigenvalues and singular values of a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// `μ₁ ≥ … ≥ μ_n`.
    pub eigenvalues: Vec<f64>,
    /// `σ₁ ≥ … ≥ σ_n`, the moduli of the eigenvalues.
    pub singular_values: Vec<f64>,
    /// `max_i ‖A v_i − μ_i v_i‖`.
    pub max_residual: f64,
}

impl Spectrum {
    pub fn mu(&self, i: usize) -> f64 {
        self.eigenvalues[i - 1]
    }

    pub fn sigma(&self, i: usize) -> f64 {
        self.singular_values[i - 1]
    }

    /// `σ₂`, or 0 for a 1×1 matrix.
    pub fn sigma2(&self) -> f64 {
        self.singular_values.get(1).copied().unwrap_or(0.0)
    }
}

/// Full eigendecomposition with unit eigenvectors.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub spectrum: Spectrum,
    /// `vectors[i]` is the eigenvector for `spectrum.eigenvalues[i]`, with
    /// its largest-magnitude component positive.
    pub vectors: Vec<Vec<f64>>,
    pub rotations: usize,
}

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
pub fn eig_symmetric(a: &SymmetricMatrix) -> Result<SymmetricEigen, LinalgError> {
    let n = a.n();
    let mut m = a.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let norm = a.frobenius_norm();
    let target = OFF_DIAGONAL_TOLERANCE * norm;
    let cap = ROTATION_CAP_FACTOR * n * n;
    let mut rotations = 0usize;

    loop {
        let off = off_diagonal_norm(&m, n);
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                if rotations >= cap {
                    return Err(LinalgError::NoConvergence {
                        rotations,
                        off_diagonal: off_diagonal_norm(&m, n),
                    });
                }
                rotate(&mut m, &mut v, n, p, q);
                rotations += 1;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&c| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r * n + c]).collect();
            orient(&mut col);
            col
        })
        .collect();

    let max_residual = eigenvalues
        .iter()
        .zip(&vectors)
        .map(|(&mu, x)| {
            let ax = a.mul_vec(x);
            ax.iter()
                .zip(x)
                .map(|(l, r)| (l - mu * r).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);

    let singular_values = sorted_moduli(&eigenvalues);
    Ok(SymmetricEigen {
        spectrum: Spectrum {
            eigenvalues,
            singular_values,
            max_residual,
        },
        vectors,
        rotations,
    })
}

/// Spectrum only.
pub fn spectrum(a: &SymmetricMatrix) -> Result<Spectrum, LinalgError> {
    eig_symmetric(a).map(|e| e.spectrum)
}

/// Singular values of a symmetric matrix, sorted descending.
pub fn singular_values(a: &SymmetricMatrix) -> Result<Vec<f64>, LinalgError> {
    spectrum(a).map(|s| s.singular_values)
}

pub(crate) fn sorted_moduli(eigenvalues: &[f64]) -> Vec<f64> {
    let mut s: Vec<f64> = eigenvalues.iter().map(|v| v.abs()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn off_diagonal_norm(m: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc += 2.0 * m[i * n + j] * m[i * n + j];
        }
    }
    acc.sqrt()
}

fn rotate(m: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let app = m[p * n + p];
    let aqq = m[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = m[r * n + p];
        let arq = m[r * n + q];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        m[r * n + p] = new_rp;
        m[p * n + r] = new_rp;
        m[r * n + q] = new_rq;
        m[q * n + r] = new_rq;
    }
    m[p * n + p] = app - t * apq;
    m[q * n + q] = aqq + t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;

    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = c * vrp - s * vrq;
        v[r * n + q] = s * vrp + c * vrq;
    }
}

/// Flips the sign so the largest-magnitude component (first on ties) is
/// positive.
fn orient(x: &mut [f64]) {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    if x[best] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn all_ones_three() {
        let s = spectrum(&SymmetricMatrix::all_ones(3)).unwrap();
        assert!(close(&s.eigenvalues, &[3.0, 0.0, 0.0], 1e-12));
    }

    #[test]
    fn identity_four() {
        let s = spectrum(&SymmetricMatrix::identity(4)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0; 4]);
        assert_eq!(s.max_residual, 0.0);
    }

    #[test]
    fn two_by_two_diagonal_block() {
        let a = SymmetricMatrix::diagonal(&[2.0, 2.0]);
        let s = spectrum(&a).unwrap();
        assert_eq!(s.eigenvalues, vec![2.0, 2.0]);
    }

    #[test]
    fn singular_values_reorder_moduli() {
        let s = singular_values(&SymmetricMatrix::diagonal(&[3.0, -5.0])).unwrap();
        assert_eq!(s, vec![5.0, 3.0]);
    }

    #[test]
    fn all_ones_singular_values() {
        for n in 1..8 {
            let s = singular_values(&SymmetricMatrix::all_ones(n)).unwrap();
            assert!((s[0] - n as f64).abs() < 1e-12);
            assert!(s[1..].iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn path_graph_matches_closed_form() {
        // Path P_n has eigenvalues 2cos(πj/(n+1)).
        let n = 9;
        let a = SymmetricMatrix::from_fn(n, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
        let s = spectrum(&a).unwrap();
        let mut expected: Vec<f64> = (1..=n)
            .map(|j| 2.0 * (std::f64::consts::PI * j as f64 / (n + 1) as f64).cos())
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        assert!(close(&s.eigenvalues, &expected, 1e-12));
        assert!(s.max_residual < 1e-12);
    }

    #[test]
    fn vectors_are_orthonormal() {
        let a = SymmetricMatrix::from_fn(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let e = eig_symmetric(&a).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let dot: f64 = e.vectors[i].iter().zip(&e.vectors[j]).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12, "({i},{j}) -> {dot}");
            }
        }
    }
}
