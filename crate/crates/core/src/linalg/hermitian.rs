//! Complex Hermitian matrices, kept in memory only.
//!
//! The spectrum is obtained from the real symmetric embedding
//! `[[Re A, −Im A], [Im A, Re A]]`, whose eigenvalues are those of `A`, each
//! repeated twice.

use num_complex::Complex64;

use super::jacobi::{eig_symmetric, sorted_moduli, Spectrum};
use super::{LinalgError, SymmetricMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn from_row_major(n: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if n == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != n * n {
            return Err(LinalgError::DataLength {
                expected: n * n,
                got: data.len(),
            });
        }
        for i in 0..n {
            for j in i..n {
                let gap = (data[i * n + j] - data[j * n + i].conj()).norm();
                if gap > super::matrix::SYMMETRY_TOLERANCE {
                    return Err(LinalgError::NonSymmetric { row: i, col: j, gap });
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_real(a: &SymmetricMatrix) -> Self {
        Self {
            n: a.n(),
            data: a.as_slice().iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn rho_prime(&self) -> Complex64 {
        self.data.iter().sum::<Complex64>() / (self.n * self.n) as f64
    }

    /// `⟨Ax, x⟩ = Σ a_ij x_j conj(x_i)`, real for Hermitian `A`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> f64 {
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i * n + j] * x[j] * x[i].conj();
            }
        }
        acc.re
    }

    fn real_embedding(&self) -> SymmetricMatrix {
        let n = self.n;
        SymmetricMatrix::from_fn(2 * n, |r, c| {
            let (bi, i) = (r / n, r % n);
            let (bj, j) = (c / n, c % n);
            let z = self.get(i, j);
            match (bi, bj) {
                (0, 0) | (1, 1) => z.re,
                (0, 1) => -z.im,
                _ => z.im,
            }
        })
    }

    pub fn spectrum(&self) -> Result<Spectrum, LinalgError> {
        let doubled = eig_symmetric(&self.real_embedding())?.spectrum;
        let eigenvalues: Vec<f64> = doubled.eigenvalues.iter().step_by(2).copied().collect();
        let singular_values = sorted_moduli(&eigenvalues);
        Ok(Spectrum {
            eigenvalues,
            singular_values,
            max_residual: doubled.max_residual,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_like_two_by_two() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let a = HermitianMatrix::from_row_major(2, vec![2.0 * one, i, -i, 2.0 * one]).unwrap();
        let s = a.spectrum().unwrap();
        assert!((s.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        assert!(HermitianMatrix::from_row_major(2, vec![z, i, i, z]).is_err());
    }

    #[test]
    fn real_input_matches_real_solver() {
        let a = SymmetricMatrix::from_fn(4, |i, j| (i as f64 - j as f64).abs() - 1.0);
        let h = HermitianMatrix::from_real(&a).spectrum().unwrap();
        let r = crate::linalg::spectrum(&a).unwrap();
        for (x, y) in h.eigenvalues.iter().zip(&r.eigenvalues) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
