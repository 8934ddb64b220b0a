//! Normalized Laplacian `I − A/d` of a `d`-regular graph.

use serde::{Deserialize, Serialize};

use super::BoundsError;
use crate::graph::Graph;
use crate::linalg::{spectrum, SymmetricMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplacianSpectrum {
    pub degree: usize,
    /// `λ₀ ≤ … ≤ λ_{n−1}`.
    pub lambdas: Vec<f64>,
    /// `max_{i≠0} |1 − λ_i|`.
    pub lambda_bar: f64,
    /// `max_{i≥2} |μ_i| / d` from the adjacency spectrum.
    pub lambda_bar_adjacency: f64,
    /// Adjacency eigenvalues, descending.
    pub adjacency_eigenvalues: Vec<f64>,
}

pub fn laplacian_spectrum(g: &Graph) -> Result<LaplacianSpectrum, BoundsError> {
    let d = g.regular_degree().ok_or(BoundsError::NotRegular)?;
    if d == 0 {
        return Err(BoundsError::ZeroDegree);
    }
    let df = d as f64;
    let l = SymmetricMatrix::from_fn(g.n(), |i, j| {
        let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
        if i == j {
            1.0 - a / df
        } else {
            -a / df
        }
    });
    let mut lambdas = spectrum(&l)?.eigenvalues;
    lambdas.reverse();
    let lambda_bar = lambdas[1..].iter().map(|l| (1.0 - l).abs()).fold(0.0, f64::max);
    let mu = spectrum(&g.adjacency_matrix())?.eigenvalues;
    let lambda_bar_adjacency = mu[1..].iter().map(|m| m.abs() / df).fold(0.0, f64::max);
    Ok(LaplacianSpectrum {
        degree: d,
        lambdas,
        lambda_bar,
        lambda_bar_adjacency,
        adjacency_eigenvalues: mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_six() {
        let s = laplacian_spectrum(&Graph::complete(6)).unwrap();
        assert!(s.lambdas[0].abs() < 1e-12);
        assert!(s.lambdas[1..].iter().all(|l| (l - 1.2).abs() < 1e-12));
        assert!((s.lambda_bar - 0.2).abs() < 1e-12);
        assert!((s.lambda_bar_adjacency - 0.2).abs() < 1e-12);
    }

    #[test]
    fn four_cycle() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = laplacian_spectrum(&c4).unwrap();
        let want = [0.0, 1.0, 1.0, 2.0];
        assert!(s.lambdas.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!((s.lambda_bar - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(laplacian_spectrum(&path).unwrap_err(), BoundsError::NotRegular);
        assert_eq!(laplacian_spectrum(&Graph::empty(3)).unwrap_err(), BoundsError::ZeroDegree);
    }
}
