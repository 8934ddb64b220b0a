//! Dense real symmetric matrices.
//!
//! Storage is row-major and always exactly symmetric: constructors that
//! accept arbitrary data check the symmetry tolerance and then average the
//! two triangles, so downstream code can rely on `a[i][j] == a[j][i]`.

use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Absolute tolerance accepted by [`SymmetricMatrix::from_row_major`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// A dense real symmetric matrix of size `n >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds a matrix from row-major data, rejecting asymmetry beyond
    /// [`SYMMETRY_TOLERANCE`].
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        Self::from_row_major_with_tolerance(n, data, SYMMETRY_TOLERANCE)
    }

    pub fn from_row_major_with_tolerance(
        n: usize,
        mut data: Vec<f64>,
        tolerance: f64,
    ) -> Result<Self, LinalgError> {
        if n == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != n * n {
            return Err(LinalgError::DataLength {
                expected: n * n,
                got: data.len(),
            });
        }
        if let Some(bad) = data.iter().position(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: bad / n,
                col: bad % n,
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                if (a - b).abs() > tolerance {
                    return Err(LinalgError::NonSymmetric {
                        row: i,
                        col: j,
                        gap: (a - b).abs(),
                    });
                }
                let mean = 0.5 * (a + b);
                data[i * n + j] = mean;
                data[j * n + i] = mean;
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n >= 1, "matrix size must be positive");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The all-ones matrix `E_n`.
    pub fn all_ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Whether every entry is an integer small enough to sum exactly.
    pub fn is_integral(&self) -> bool {
        self.data
            .iter()
            .all(|v| v.fract() == 0.0 && v.abs() < 9.0e15)
    }

    /// Whether every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Sum of all entries; exact for integer matrices.
    pub fn total(&self) -> f64 {
        if self.is_integral() {
            self.data.iter().map(|&v| v as i128).sum::<i128>() as f64
        } else {
            neumaier_sum(self.data.iter().copied())
        }
    }

    /// Row sums; exact for integer matrices.
    pub fn row_sums(&self) -> Vec<f64> {
        let integral = self.is_integral();
        (0..self.n)
            .map(|i| {
                let row = self.row(i).iter().copied();
                if integral {
                    row.map(|v| v as i128).sum::<i128>() as f64
                } else {
                    neumaier_sum(row)
                }
            })
            .collect()
    }

    /// Mean of all `n²` entries (the quantity written ρ′ in the literature).
    pub fn rho_prime(&self) -> f64 {
        self.total() / (self.n * self.n) as f64
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    /// `self − c·E_n`.
    pub fn shifted_by_ones(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v - c).collect(),
        }
    }

    /// The complement `E_n − A` of a 0/1 matrix.
    pub fn complement(&self) -> Result<Self, LinalgError> {
        if !self.is_binary() {
            return Err(LinalgError::NotBinary);
        }
        Ok(Self {
            n: self.n,
            data: self.data.iter().map(|v| 1.0 - v).collect(),
        })
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix size");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨Ax, x⟩`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `⟨Ax, x⟩ / ‖x‖²`.
    pub fn rayleigh_quotient(&self, x: &[f64]) -> Result<f64, LinalgError> {
        if x.len() != self.n {
            return Err(LinalgError::DataLength {
                expected: self.n,
                got: x.len(),
            });
        }
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        if norm_sq == 0.0 {
            return Err(LinalgError::ZeroVector);
        }
        Ok(self.quadratic_form(x) / norm_sq)
    }

    /// Principal submatrix-like block `A[rows, cols]` as row-major data.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<f64> {
        rows.iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j)))
            .collect()
    }
}

/// Compensated summation.
pub(crate) fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Mean of all entries of a matrix; free-function form of
/// [`SymmetricMatrix::rho_prime`].
pub fn rho_prime(a: &SymmetricMatrix) -> f64 {
    a.rho_prime()
}

pub fn rayleigh_quotient(a: &SymmetricMatrix, x: &[f64]) -> Result<f64, LinalgError> {
    a.rayleigh_quotient(x)
}

pub fn all_ones(n: usize) -> SymmetricMatrix {
    SymmetricMatrix::all_ones(n)
}

pub fn complement(a: &SymmetricMatrix) -> Result<SymmetricMatrix, LinalgError> {
    a.complement()
}
