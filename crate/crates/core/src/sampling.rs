//! Seeded random generation shared by the samplers and generators.
//!
//! Every sampling task gets its own ChaCha8 stream derived from
//! `(seed, task)`, so results do not depend on how tasks are scheduled.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexSet};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for task number `task` under the run seed `seed`.
pub fn task_rng(seed: u64, task: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(task)))
}

/// Subset size in `1..=n`, log-uniform.
pub fn log_uniform_size<R: Rng>(rng: &mut R, n: usize) -> usize {
    assert!(n >= 1);
    let u: f64 = rng.random();
    let s = ((n as f64 + 1.0).ln() * u).exp().floor() as usize;
    s.clamp(1, n)
}

/// Uniform random subset of `0..n` of the given size.
pub fn subset_of_size<R: Rng>(rng: &mut R, n: usize, size: usize) -> VertexSet {
    VertexSet::from_indices(n, index::sample(rng, n, size).into_iter())
}

/// Nonempty subset with a log-uniform size.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> VertexSet {
    let size = log_uniform_size(rng, n);
    subset_of_size(rng, n, size)
}

/// Erdős–Rényi `G(n, p)`; pairs are visited in lexicographic order.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    g
}
