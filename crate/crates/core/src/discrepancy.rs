//! Matrix and graph discrepancy.
//!
//! For a fixed row set `X` the column sums `s_j = Σ_{i∈X} (a_ij − c)` decide
//! everything: the best `Y` of size `m` is the top-`m` or bottom-`m` prefix of
//! `s` sorted by value. Exact search walks all `X` in Gray-code order, so each
//! step updates `s` with one row.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{from_one_based, one_based, Graph, VertexSet};
use crate::linalg::{neumaier_sum, SymmetricMatrix};
use crate::sampling::task_rng;
use rand::Rng;

/// Largest `n` accepted by exact search unless a different cap is given.
pub const DEFAULT_EXACT_CAP: usize = 24;
/// Restarts used by the heuristic when the caller does not choose.
pub const DEFAULT_RESTARTS: usize = 64;

/// Gray-code indices per parallel work unit.
const CHUNK_BITS: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiscError {
    #[error("exact search over n = {n} exceeds the cap of {cap}; use the heuristic")]
    TooLarge { n: usize, cap: usize },
    #[error("heuristic search needs at least one restart")]
    NoRestarts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscMode {
    Exact,
    Heuristic,
}

/// How to search: exhaustive up to `cap`, or seeded local search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Search {
    Exact { cap: usize },
    Heuristic { restarts: usize, seed: u64 },
}

impl Search {
    pub fn exact() -> Self {
        Search::Exact {
            cap: DEFAULT_EXACT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscResult {
    pub value: f64,
    #[serde(
        rename = "witness_X",
        serialize_with = "one_based",
        deserialize_with = "from_one_based"
    )]
    pub witness_x: Vec<usize>,
    #[serde(
        rename = "witness_Y",
        serialize_with = "one_based",
        deserialize_with = "from_one_based"
    )]
    pub witness_y: Vec<usize>,
    pub mode: DiscMode,
    pub evaluations: u64,
}

/// `|Σ_{i∈X, j∈Y} (a_ij − c)| / √(|X||Y|)`, summed exactly for integer
/// matrices.
pub fn disc_expression(a: &SymmetricMatrix, center: f64, x: &[usize], y: &[usize]) -> f64 {
    assert!(!x.is_empty() && !y.is_empty(), "witness sets must be nonempty");
    let raw = if a.is_integral() {
        x.iter()
            .flat_map(|&i| y.iter().map(move |&j| a.get(i, j) as i128))
            .sum::<i128>() as f64
    } else {
        neumaier_sum(x.iter().flat_map(|&i| y.iter().map(move |&j| a.get(i, j))))
    };
    let size = (x.len() * y.len()) as f64;
    (raw - size * center).abs() / size.sqrt()
}

/// `|e(X) − ρ·C(|X|, 2)| / |X|` for a graph.
pub fn disc1_expression(g: &Graph, rho: f64, x: &[usize]) -> f64 {
    assert!(!x.is_empty(), "witness set must be nonempty");
    let set = VertexSet::from_indices(g.n(), x.iter().copied());
    let s = x.len() as f64;
    (g.e_within(&set) as f64 - rho * s * (s - 1.0) / 2.0).abs() / s
}

/// `2e(G) / (n(n−1))`, the bound on `|disc₂(G) − disc(A(G))|`.
pub fn disc_gap_bound(g: &Graph) -> f64 {
    let n = g.n() as f64;
    if g.n() < 2 {
        return 0.0;
    }
    2.0 * g.edge_count() as f64 / (n * (n - 1.0))
}

pub fn disc_exact(a: &SymmetricMatrix) -> Result<DiscResult, DiscError> {
    disc_exact_capped(a, DEFAULT_EXACT_CAP)
}

pub fn disc_exact_capped(a: &SymmetricMatrix, cap: usize) -> Result<DiscResult, DiscError> {
    exact_two_set(a, a.rho_prime(), cap)
}

pub fn disc_heuristic(
    a: &SymmetricMatrix,
    restarts: usize,
    seed: u64,
) -> Result<DiscResult, DiscError> {
    heuristic_two_set(a, a.rho_prime(), restarts, seed)
}

pub fn disc(a: &SymmetricMatrix, search: Search) -> Result<DiscResult, DiscError> {
    match search {
        Search::Exact { cap } => disc_exact_capped(a, cap),
        Search::Heuristic { restarts, seed } => disc_heuristic(a, restarts, seed),
    }
}

/// `disc₂(G)`: the two-set search with the graph density in place of ρ′.
pub fn disc2_graph(g: &Graph, search: Search) -> Result<DiscResult, DiscError> {
    let a = g.adjacency_matrix();
    let rho = g.density();
    match search {
        Search::Exact { cap } => exact_two_set(&a, rho, cap),
        Search::Heuristic { restarts, seed } => heuristic_two_set(&a, rho, restarts, seed),
    }
}

/// `disc₁(G)`; the witness is reported as both `X` and `Y`.
pub fn disc1_graph(g: &Graph, search: Search) -> Result<DiscResult, DiscError> {
    match search {
        Search::Exact { cap } => exact_one_set(g, cap),
        Search::Heuristic { restarts, seed } => heuristic_one_set(g, restarts, seed),
    }
}

#[derive(Debug, Clone, Copy)]
struct Best {
    value: f64,
    x: u64,
    y: u64,
}

impl Best {
    const NONE: Best = Best {
        value: -1.0,
        x: u64::MAX,
        y: u64::MAX,
    };

    fn beats(&self, other: &Best) -> bool {
        self.value > other.value
            || (self.value == other.value && (self.x, self.y) < (other.x, other.y))
    }

    fn max(self, other: Best) -> Best {
        if other.beats(&self) {
            other
        } else {
            self
        }
    }
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Sorts `(s_j, j)` by value descending, index ascending.
fn sort_desc(order: &mut [(f64, usize)]) {
    order.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
}

/// Ascending by value, ascending index within equal values, derived from a
/// descending order in O(n).
fn ascending_from(desc: &[(f64, usize)], asc: &mut Vec<(f64, usize)>) {
    asc.clear();
    let mut end = desc.len();
    while end > 0 {
        let mut start = end - 1;
        while start > 0 && desc[start - 1].0 == desc[end - 1].0 {
            start -= 1;
        }
        asc.extend_from_slice(&desc[start..end]);
        end = start;
    }
}

struct ExactScratch {
    desc: Vec<(f64, usize)>,
    asc: Vec<(f64, usize)>,
}

/// Best `Y` for the row set `x` with column sums `cols`.
fn best_y_exact(cols: &[f64], x: u64, x_size: usize, center: f64, s: &mut ExactScratch) -> Best {
    let n = cols.len();
    s.desc.clear();
    s.desc.extend(cols.iter().copied().zip(0..n));
    sort_desc(&mut s.desc);
    ascending_from(&s.desc, &mut s.asc);

    let mut best = Best::NONE;
    for order in [&s.desc, &s.asc] {
        let mut prefix = 0.0;
        let mut mask = 0u64;
        for (m, &(v, j)) in order.iter().enumerate() {
            let m = m + 1;
            prefix += v;
            mask |= 1 << j;
            let size = (x_size * m) as f64;
            let value = (prefix - size * center).abs() / size.sqrt();
            best = best.max(Best { value, x, y: mask });
        }
    }
    best
}

fn column_sums(a: &SymmetricMatrix, mask: u64) -> Vec<f64> {
    let n = a.n();
    let mut cols = vec![0.0; n];
    for i in (0..n).filter(|&i| mask >> i & 1 == 1) {
        for (c, v) in cols.iter_mut().zip(a.row(i)) {
            *c += v;
        }
    }
    cols
}

fn gray(g: u64) -> u64 {
    g ^ (g >> 1)
}

fn exact_chunk(a: &SymmetricMatrix, center: f64, start: u64, end: u64) -> Best {
    let n = a.n();
    let mut scratch = ExactScratch {
        desc: Vec::with_capacity(n),
        asc: Vec::with_capacity(n),
    };
    let mut mask = gray(start);
    let mut cols = column_sums(a, mask);
    let mut best = Best::NONE;
    for g in start..end {
        if g > start {
            let bit = g.trailing_zeros() as usize;
            mask ^= 1 << bit;
            let sign = if mask >> bit & 1 == 1 { 1.0 } else { -1.0 };
            for (c, v) in cols.iter_mut().zip(a.row(bit)) {
                *c += sign * v;
            }
        }
        if mask == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        best = best.max(best_y_exact(&cols, mask, size, center, &mut scratch));
    }
    best
}

fn exact_two_set(a: &SymmetricMatrix, center: f64, cap: usize) -> Result<DiscResult, DiscError> {
    let n = a.n();
    if n > cap.min(63) {
        return Err(DiscError::TooLarge { n, cap });
    }
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS;
    let chunks = total.div_ceil(chunk);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| exact_chunk(a, center, c * chunk, ((c + 1) * chunk).min(total)))
        .reduce(|| Best::NONE, Best::max);

    let (x, y) = (mask_to_vec(best.x), mask_to_vec(best.y));
    Ok(DiscResult {
        value: disc_expression(a, center, &x, &y),
        witness_x: x,
        witness_y: y,
        mode: DiscMode::Exact,
        evaluations: (total - 1) * 2 * n as u64,
    })
}

/// Best `Y` for a row set given its column sums; ties keep the first
/// candidate in (size, top-before-bottom) order.
fn best_y_heuristic(
    cols: &[f64],
    x_size: usize,
    center: f64,
    desc: &mut Vec<(f64, usize)>,
) -> (f64, usize, bool) {
    let n = cols.len();
    desc.clear();
    desc.extend(cols.iter().copied().zip(0..n));
    sort_desc(desc);
    let mut best = (-1.0, 0, true);
    let (mut top, mut bottom) = (0.0, 0.0);
    for m in 1..=n {
        top += desc[m - 1].0;
        bottom += desc[n - m].0;
        let size = (x_size * m) as f64;
        let vt = (top - size * center).abs() / size.sqrt();
        let vb = (bottom - size * center).abs() / size.sqrt();
        if vt > best.0 {
            best = (vt, m, true);
        }
        if vb > best.0 {
            best = (vb, m, false);
        }
    }
    best
}

struct Restart {
    value: f64,
    x: Vec<usize>,
    y: Vec<usize>,
    evaluations: u64,
}

fn random_nonempty_mask<R: Rng>(rng: &mut R, n: usize) -> Vec<bool> {
    loop {
        let x: Vec<bool> = (0..n).map(|_| rng.random::<bool>()).collect();
        if x.iter().any(|&b| b) {
            return x;
        }
    }
}

fn two_set_restart(a: &SymmetricMatrix, center: f64, seed: u64, restart: usize) -> Restart {
    let n = a.n();
    let mut rng = task_rng(seed, restart as u64);
    let mut in_x = random_nonempty_mask(&mut rng, n);
    let mut size = in_x.iter().filter(|&&b| b).count();
    let mut cols = vec![0.0; n];
    for i in (0..n).filter(|&i| in_x[i]) {
        for (c, v) in cols.iter_mut().zip(a.row(i)) {
            *c += v;
        }
    }
    let mut desc = Vec::with_capacity(n);
    let mut evaluations = 1u64;
    let mut current = best_y_heuristic(&cols, size, center, &mut desc).0;

    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..n {
            if in_x[i] && size == 1 {
                continue;
            }
            let sign = if in_x[i] { -1.0 } else { 1.0 };
            let new_size = if in_x[i] { size - 1 } else { size + 1 };
            let trial: Vec<f64> = cols.iter().zip(a.row(i)).map(|(c, v)| c + sign * v).collect();
            evaluations += 1;
            let value = best_y_heuristic(&trial, new_size, center, &mut desc).0;
            if value > current {
                current = value;
                cols = trial;
                size = new_size;
                in_x[i] = !in_x[i];
                improved = true;
            }
        }
    }

    // Recompute from scratch so drift in `cols` cannot pick a stale Y.
    let x: Vec<usize> = (0..n).filter(|&i| in_x[i]).collect();
    let mask = x.iter().fold(VertexSet::empty(n), |mut s, &i| {
        s.insert(i);
        s
    });
    let fresh: Vec<f64> = (0..n)
        .map(|j| neumaier_sum(mask.iter().map(|i| a.get(i, j))))
        .collect();
    let (_, m, top) = best_y_heuristic(&fresh, x.len(), center, &mut desc);
    let mut y: Vec<usize> = if top {
        desc[..m].iter().map(|&(_, j)| j).collect()
    } else {
        desc[n - m..].iter().map(|&(_, j)| j).collect()
    };
    y.sort_unstable();
    Restart {
        value: disc_expression(a, center, &x, &y),
        x,
        y,
        evaluations: evaluations * 2 * n as u64,
    }
}

fn pick_restart(results: Vec<Restart>, mode: DiscMode) -> DiscResult {
    let evaluations = results.iter().map(|r| r.evaluations).sum();
    let mut best: Option<Restart> = None;
    for r in results {
        if best.as_ref().is_none_or(|b| r.value > b.value) {
            best = Some(r);
        }
    }
    let best = best.expect("at least one restart");
    DiscResult {
        value: best.value,
        witness_x: best.x,
        witness_y: best.y,
        mode,
        evaluations,
    }
}

fn heuristic_two_set(
    a: &SymmetricMatrix,
    center: f64,
    restarts: usize,
    seed: u64,
) -> Result<DiscResult, DiscError> {
    if restarts == 0 {
        return Err(DiscError::NoRestarts);
    }
    let results: Vec<Restart> = (0..restarts)
        .into_par_iter()
        .map(|r| two_set_restart(a, center, seed, r))
        .collect();
    Ok(pick_restart(results, DiscMode::Heuristic))
}

fn one_set_value(e: usize, size: usize, rho: f64) -> f64 {
    let s = size as f64;
    (e as f64 - rho * s * (s - 1.0) / 2.0).abs() / s
}

fn exact_one_set(g: &Graph, cap: usize) -> Result<DiscResult, DiscError> {
    let n = g.n();
    if n > cap.min(63) {
        return Err(DiscError::TooLarge { n, cap });
    }
    let rho = g.density();
    let rows: Vec<u64> = (0..n).map(|u| g.neighbors(u).words().first().copied().unwrap_or(0)).collect();
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS;
    let best = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let (start, end) = (c * chunk, ((c + 1) * chunk).min(total));
            let mut best = Best::NONE;
            for g in start..end {
                let mask = gray(g);
                if mask == 0 {
                    continue;
                }
                let twice_e: u32 = (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| (rows[i] & mask).count_ones())
                    .sum();
                let value = one_set_value(twice_e as usize / 2, mask.count_ones() as usize, rho);
                best = best.max(Best { value, x: mask, y: mask });
            }
            best
        })
        .reduce(|| Best::NONE, Best::max);
    let x = mask_to_vec(best.x);
    Ok(DiscResult {
        value: disc1_expression(g, rho, &x),
        witness_y: x.clone(),
        witness_x: x,
        mode: DiscMode::Exact,
        evaluations: total - 1,
    })
}

fn one_set_restart(g: &Graph, rho: f64, seed: u64, restart: usize) -> Restart {
    let n = g.n();
    let mut rng = task_rng(seed, restart as u64);
    let mut in_x = random_nonempty_mask(&mut rng, n);
    let mut set = VertexSet::from_indices(n, (0..n).filter(|&i| in_x[i]));
    let mut size = set.len();
    let mut e = g.e_within(&set);
    let mut inside: Vec<usize> = (0..n).map(|v| g.neighbors(v).intersection_len(set.words())).collect();
    let mut current = one_set_value(e, size, rho);
    let mut evaluations = 1u64;

    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..n {
            if in_x[i] && size == 1 {
                continue;
            }
            let (new_e, new_size) = if in_x[i] {
                (e - inside[i], size - 1)
            } else {
                (e + inside[i], size + 1)
            };
            evaluations += 1;
            let value = one_set_value(new_e, new_size, rho);
            if value > current {
                let delta: isize = if in_x[i] { -1 } else { 1 };
                for v in g.neighbors(i).iter() {
                    inside[v] = (inside[v] as isize + delta) as usize;
                }
                if in_x[i] {
                    set.remove(i);
                } else {
                    set.insert(i);
                }
                in_x[i] = !in_x[i];
                current = value;
                e = new_e;
                size = new_size;
                improved = true;
            }
        }
    }
    let x = set.to_vec();
    Restart {
        value: disc1_expression(g, rho, &x),
        y: x.clone(),
        x,
        evaluations,
    }
}

fn heuristic_one_set(g: &Graph, restarts: usize, seed: u64) -> Result<DiscResult, DiscError> {
    if restarts == 0 {
        return Err(DiscError::NoRestarts);
    }
    let rho = g.density();
    let results: Vec<Restart> = (0..restarts)
        .into_par_iter()
        .map(|r| one_set_restart(g, rho, seed, r))
        .collect();
    Ok(pick_restart(results, DiscMode::Heuristic))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascending_keeps_index_order_within_ties() {
        let mut desc = vec![(2.0, 3), (1.0, 0), (1.0, 2), (0.0, 1)];
        sort_desc(&mut desc);
        let mut asc = Vec::new();
        ascending_from(&desc, &mut asc);
        assert_eq!(asc, vec![(0.0, 1), (1.0, 0), (1.0, 2), (2.0, 3)]);
    }

    #[test]
    fn identity_two() {
        let r = disc_exact(&SymmetricMatrix::identity(2)).unwrap();
        assert_eq!(r.value, 0.5);
        assert_eq!((r.witness_x.clone(), r.witness_y.clone()), (vec![0], vec![0]));
    }

    #[test]
    fn too_large() {
        let a = SymmetricMatrix::zeros(25);
        assert_eq!(
            disc_exact(&a).unwrap_err(),
            DiscError::TooLarge { n: 25, cap: 24 }
        );
        assert!(disc_exact_capped(&SymmetricMatrix::zeros(6), 5).is_err());
    }

    #[test]
    fn json_uses_one_based_witnesses() {
        let r = disc_exact(&SymmetricMatrix::identity(2)).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"witness_X\":[1]"), "{text}");
        assert!(text.contains("\"mode\":\"exact\""));
        let back: DiscResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
