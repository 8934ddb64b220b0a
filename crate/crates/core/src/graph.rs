//! Simple undirected graphs with bitset adjacency.

use serde::{Deserialize, Serializer};
use thiserror::Error;

use crate::linalg::SymmetricMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("matrix is not a symmetric 0/1 matrix with zero diagonal")]
    NotAdjacency,
}

/// A set of vertices (or matrix indices) stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in indices {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::from_indices(n, (0..n.min(64)).filter(|&i| mask >> i & 1 == 1))
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range");
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `|self ∩ other|`.
    pub fn intersection_len(&self, other: &[u64]) -> usize {
        self.words
            .iter()
            .zip(other)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> Self {
        let mut s = Self::full(self.n);
        for (w, o) in s.words.iter_mut().zip(&self.words) {
            *w &= !o;
        }
        s
    }
}

/// Serializes a 0-based index list as 1-based labels.
pub(crate) fn one_based<S: Serializer>(indices: &[usize], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(indices.iter().map(|v| v + 1))
}

pub(crate) fn from_one_based<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> Result<Vec<usize>, D::Error> {
    let raw = Vec::<usize>::deserialize(d)?;
    raw.into_iter()
        .map(|v| {
            v.checked_sub(1)
                .ok_or_else(|| serde::de::Error::custom("labels are 1-based"))
        })
        .collect()
}

/// A simple undirected graph on vertices `0..n` (written `1..n` in files).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            rows: (0..n).map(|_| VertexSet::empty(n)).collect(),
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adjacency graph of a symmetric 0/1 matrix with zero diagonal.
    pub fn from_adjacency(a: &SymmetricMatrix) -> Result<Self, GraphError> {
        let n = a.n();
        if !a.is_binary() || (0..n).any(|i| a.get(i, i) != 0.0) {
            return Err(GraphError::NotAdjacency);
        }
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if a.get(u, v) == 1.0 {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::OutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.edge_count += 1;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &VertexSet {
        &self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            Some(&first) if d.iter().all(|&x| x == first) => Some(first),
            None => Some(0),
            _ => None,
        }
    }

    /// `|Γ(u) ∩ Γ(v)|`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.rows[u].intersection_len(self.rows[v].words())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Edge density `e(G) / C(n, 2)`.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.edge_count as f64 / (self.n * (self.n - 1) / 2) as f64
    }

    /// Ordered adjacent pairs `(u, v)` with `u ∈ X`, `v ∈ Y`.
    pub fn e_between(&self, x: &VertexSet, y: &VertexSet) -> usize {
        x.iter().map(|u| self.rows[u].intersection_len(y.words())).sum()
    }

    /// Edges inside `X` (unordered).
    pub fn e_within(&self, x: &VertexSet) -> usize {
        self.e_between(x, x) / 2
    }

    pub fn volume(&self, x: &VertexSet) -> usize {
        x.iter().map(|u| self.degree(u)).sum()
    }

    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge_unchecked(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge_unchecked(u + self.n, v + self.n);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_between_counts_ordered_pairs() {
        let k3 = Graph::complete(3);
        let all = VertexSet::full(3);
        assert_eq!(k3.e_between(&all, &all), 6);
        assert_eq!(k3.e_within(&all), 3);
        let one = VertexSet::from_indices(3, [0]);
        assert_eq!(k3.e_between(&one, &one), 0);
        assert_eq!(k3.e_between(&one, &all), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn adjacency_round_trip() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        let back = Graph::from_adjacency(&g.adjacency_matrix()).unwrap();
        assert_eq!(g, back);
        assert_eq!(g.degrees(), vec![2, 2, 1, 1, 2]);
    }

    #[test]
    fn codegree_and_volume() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.codegree(0, 2), 2);
        assert_eq!(c4.codegree(0, 1), 0);
        assert_eq!(c4.volume(&VertexSet::full(4)), 8);
        assert_eq!(c4.regular_degree(), Some(2));
    }

    #[test]
    fn wide_sets_cross_word_boundaries() {
        let s = VertexSet::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 129]);
        assert_eq!(s.complement().len(), 126);
    }
}
