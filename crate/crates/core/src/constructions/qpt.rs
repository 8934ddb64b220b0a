//! Circulant graphs `Q(p, t)`: `u ~ v` iff `(u − v)² mod p ≤ t`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::graph::Graph;

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<(), ConstructionError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ConstructionError::NotPrime(p))
    }
}

/// Whether the residue difference `delta ∈ 1..p` is an edge in `Q(p, t)`.
pub(crate) fn joined(delta: u64, p: u64, t: u64) -> bool {
    delta % p != 0 && (delta * delta) % p <= t
}

/// `Q(p, t)` and its degree.
pub fn qpt_graph(p: u64, t: u64) -> Result<(Graph, usize), ConstructionError> {
    check_prime(p)?;
    if !(1..=p).contains(&t) {
        return Err(ConstructionError::BadT { p, t });
    }
    let n = p as usize;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if joined((v - u) as u64, p, t) {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    let degree = g
        .regular_degree()
        .expect("circulant graphs are regular");
    Ok((g, degree))
}

/// Degrees of `Q(p, t)` for every `t ∈ 1..=p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeCatalog {
    pub p: u64,
    /// `degrees[t − 1]` is the degree of `Q(p, t)`.
    pub degrees: Vec<usize>,
    /// Distinct degrees, ascending.
    pub values: Vec<usize>,
    /// For each degree, the smallest `t` that realizes it.
    pub smallest_t: BTreeMap<usize, u64>,
}

impl DegreeCatalog {
    pub fn degree(&self, t: u64) -> usize {
        self.degrees[(t - 1) as usize]
    }

    /// The catalog degree closest to `target`; ties go to the smaller one.
    pub fn nearest(&self, target: f64) -> usize {
        let mut best = self.values[0];
        for &d in &self.values[1..] {
            if (d as f64 - target).abs() < (best as f64 - target).abs() {
                best = d;
            }
        }
        best
    }
}

/// Counts `#{w ∈ 1..p : w² mod p ≤ t}` for every `t` from the sorted
/// squares.
pub fn degree_catalog(p: u64) -> Result<DegreeCatalog, ConstructionError> {
    check_prime(p)?;
    let mut squares: Vec<u64> = (1..p).map(|w| (w * w) % p).collect();
    squares.sort_unstable();
    let mut degrees = Vec::with_capacity(p as usize);
    let mut idx = 0;
    for t in 1..=p {
        while idx < squares.len() && squares[idx] <= t {
            idx += 1;
        }
        degrees.push(idx);
    }
    let mut smallest_t = BTreeMap::new();
    for (i, &d) in degrees.iter().enumerate() {
        smallest_t.entry(d).or_insert(i as u64 + 1);
    }
    Ok(DegreeCatalog {
        p,
        values: smallest_t.keys().copied().collect(),
        degrees,
        smallest_t,
    })
}
