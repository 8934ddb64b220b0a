//! The `2kp × 2kp` block matrix built from circulant blocks whose degrees
//! follow `p/2 + p/(2√(ij))`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::qpt::{degree_catalog, joined};
use super::tightness::harmonic;
use super::ConstructionError;
use crate::graph::Graph;
use crate::linalg::SymmetricMatrix;

/// Smallest `k` with `k⁵ ≥ p`, i.e. `⌈p^{1/5}⌉` without rounding trouble.
pub fn canonical_k(p: u64) -> usize {
    let mut k = 1u64;
    while k.pow(5) < p {
        k += 1;
    }
    k as usize
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockPlan {
    pub p: u64,
    pub k: usize,
    /// False when `k` was overridden.
    pub canonical: bool,
    /// `d[i][j]`, the catalog degree nearest `p/2 + p/(2√((i+1)(j+1)))`.
    pub d: Vec<Vec<usize>>,
    /// Degree → the smallest `t` with `Q(p, t)` of that degree.
    pub catalog: BTreeMap<usize, u64>,
    /// `2√p·(ln p)²`.
    pub dij_bound: f64,
    /// `max |2d_ij − (p + p/√(ij))|`.
    pub dij_max_gap: f64,
    pub dij_violations: usize,
}

impl BlockPlan {
    pub fn n(&self) -> usize {
        2 * self.k * self.p as usize
    }

    /// `ρ′ = 1/2` for every plan, since each row sums to `kp`.
    pub fn row_sum(&self) -> usize {
        self.k * self.p as usize
    }

    /// Index range `I_s` (0-based `s`).
    pub fn index_range(&self, s: usize) -> std::ops::Range<usize> {
        let p = self.p as usize;
        s * p..(s + 1) * p
    }

    /// Step vector `y_i = 1/√s` on `I_s` for `s ≤ k`, `−1/√(s − k)` after.
    pub fn step_vector(&self) -> Vec<f64> {
        let p = self.p as usize;
        (0..self.n())
            .map(|i| {
                let s = i / p;
                let v = 1.0 / ((s % self.k + 1) as f64).sqrt();
                if s < self.k {
                    v
                } else {
                    -v
                }
            })
            .collect()
    }

    /// `Σ_ij (2d_ij − p)/√(ij) / ξ_k`, the Rayleigh quotient of
    /// [`BlockPlan::step_vector`].
    pub fn step_rayleigh_closed_form(&self) -> f64 {
        let p = self.p as f64;
        let mut sum = 0.0;
        for i in 0..self.k {
            for j in 0..self.k {
                sum += (2.0 * self.d[i][j] as f64 - p) / (((i + 1) * (j + 1)) as f64).sqrt();
            }
        }
        sum / harmonic(self.k)
    }

    /// Entry `(r, c)` of the block matrix.
    pub fn entry(&self, r: usize, c: usize) -> bool {
        let p = self.p as usize;
        let (br, bc) = (r / p, c / p);
        let d = self.d[br % self.k][bc % self.k];
        let t = self.catalog[&d];
        let delta = (r % p + p - c % p) % p;
        let base = joined(delta as u64, self.p, t);
        if (br < self.k) == (bc < self.k) {
            base
        } else {
            !base
        }
    }
}

pub fn block_plan(p: u64) -> Result<BlockPlan, ConstructionError> {
    plan(p, canonical_k(p), true)
}

/// Plan with a caller-chosen `k`; flagged as non-canonical.
pub fn block_plan_with_k(p: u64, k: usize) -> Result<BlockPlan, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroSize);
    }
    plan(p, k, k == canonical_k(p))
}

fn plan(p: u64, k: usize, canonical: bool) -> Result<BlockPlan, ConstructionError> {
    let catalog = degree_catalog(p)?;
    let pf = p as f64;
    let dij_bound = 2.0 * pf.sqrt() * pf.ln().powi(2);
    let mut d = vec![vec![0usize; k]; k];
    let mut used = BTreeMap::new();
    let mut dij_max_gap = 0.0f64;
    let mut dij_violations = 0;
    for i in 0..k {
        for j in 0..k {
            let root = (((i + 1) * (j + 1)) as f64).sqrt();
            let target = pf / 2.0 + pf / (2.0 * root);
            let q = catalog.nearest(target);
            d[i][j] = q;
            used.insert(q, catalog.smallest_t[&q]);
            let gap = (2.0 * q as f64 - (pf + pf / root)).abs();
            dij_max_gap = dij_max_gap.max(gap);
            if gap > dij_bound {
                dij_violations += 1;
            }
        }
    }
    Ok(BlockPlan {
        p,
        k,
        canonical,
        d,
        catalog: used,
        dij_bound,
        dij_max_gap,
        dij_violations,
    })
}

pub fn block_matrix(plan: &BlockPlan) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(plan.n(), |r, c| if plan.entry(r, c) { 1.0 } else { 0.0 })
}

pub fn block_graph(plan: &BlockPlan) -> Graph {
    let n = plan.n();
    let mut g = Graph::empty(n);
    for r in 0..n {
        for c in (r + 1)..n {
            if plan.entry(r, c) {
                g.add_edge_unchecked(r, c);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_k_small_primes() {
        assert_eq!(canonical_k(2), 2);
        assert_eq!(canonical_k(31), 2);
        assert_eq!(canonical_k(37), 3);
        assert_eq!(canonical_k(243), 3);
        assert_eq!(canonical_k(251), 4);
    }

    #[test]
    fn plan_13() {
        let plan = block_plan(13).unwrap();
        assert_eq!(plan.k, 2);
        assert!(plan.canonical);
        assert_eq!(plan.d, vec![vec![12, 12], vec![12, 10]]);
        assert_eq!(plan.n(), 52);
        assert!(!block_plan_with_k(13, 3).unwrap().canonical);
    }

    #[test]
    fn matrix_13_properties() {
        let plan = block_plan(13).unwrap();
        let a = block_matrix(&plan);
        assert!(a.is_binary());
        assert!((0..52).all(|i| a.get(i, i) == 0.0));
        assert!(a.row_sums().iter().all(|&s| s == 26.0));
        assert_eq!(a.rho_prime(), 0.5);
        let g = block_graph(&plan);
        assert_eq!(g.adjacency_matrix(), a);
        assert_eq!(g.regular_degree(), Some(26));
    }
}
