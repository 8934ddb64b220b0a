//! The smallest `α` with
//! `|e(X,Y) − vol X·vol Y/vol V| ≤ α·√(vol X·vol Y·vol(V∖X)·vol(V∖Y))/vol V`
//! over the tested pairs, compared with `λ̄`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::laplacian::laplacian_spectrum;
use super::report::BoundReport;
use super::BoundsError;
use crate::graph::{from_one_based, one_based, Graph};
use crate::sampling::{random_subset, task_rng};

/// Largest `n` searched over all `(X, Y)` pairs.
pub const CHUNG_EXHAUSTIVE_MAX_N: usize = 14;
const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetSearch {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChungReport {
    /// Checks against the caller's `α`, when one was given.
    pub report: BoundReport,
    pub mode: String,
    pub pairs: u64,
    /// Pairs with a zero volume product; there both sides vanish.
    pub degenerate_pairs: u64,
    pub min_alpha: f64,
    #[serde(rename = "witness_X", serialize_with = "one_based", deserialize_with = "from_one_based")]
    pub witness_x: Vec<usize>,
    #[serde(rename = "witness_Y", serialize_with = "one_based", deserialize_with = "from_one_based")]
    pub witness_y: Vec<usize>,
    pub lambda_bar: Option<f64>,
    pub lambda_bar_over_alpha: Option<f64>,
}

/// One evaluated pair: `num = |e·vol V − vol X·vol Y|`, `root = √(volume
/// product)`.
#[derive(Clone, Copy)]
struct Pair {
    num: f64,
    root: f64,
}

impl Pair {
    fn alpha(&self) -> Option<f64> {
        (self.root > 0.0).then(|| self.num / self.root)
    }
}

fn evaluate(e: u64, vol_x: u64, vol_y: u64, vol_v: u64) -> Pair {
    let num = (e as i128 * vol_v as i128 - vol_x as i128 * vol_y as i128).unsigned_abs() as f64;
    let prod = vol_x as u128 * vol_y as u128 * (vol_v - vol_x) as u128 * (vol_v - vol_y) as u128;
    Pair {
        num,
        root: (prod as f64).sqrt(),
    }
}

struct Accumulator {
    report: BoundReport,
    pairs: u64,
    degenerate: u64,
    best: (f64, u64, u64),
    best_sets: Option<(Vec<usize>, Vec<usize>)>,
}

impl Accumulator {
    fn new(alpha: Option<f64>) -> Self {
        let mut report = BoundReport::new("chung_alpha");
        if let Some(a) = alpha {
            report = report.param("alpha", a);
        }
        Self {
            report,
            pairs: 0,
            degenerate: 0,
            best: (0.0, u64::MAX, u64::MAX),
            best_sets: None,
        }
    }

    /// `key` orders ties; lower wins.
    fn push(
        &mut self,
        pair: Pair,
        vol_v: u64,
        alpha: Option<f64>,
        key: (u64, u64),
        sets: impl Fn() -> (Vec<usize>, Vec<usize>),
    ) {
        self.pairs += 1;
        if pair.root == 0.0 {
            self.degenerate += 1;
        }
        if let Some(a) = pair.alpha() {
            if a > self.best.0 || (a == self.best.0 && key < (self.best.1, self.best.2)) {
                self.best = (a, key.0, key.1);
                self.best_sets = Some(sets());
            }
        }
        if let Some(alpha) = alpha {
            let v = vol_v as f64;
            self.report.record(pair.num / v, alpha * pair.root / v, TOLERANCE, &sets);
        }
    }

    fn merge(&mut self, other: Accumulator) {
        self.pairs += other.pairs;
        self.degenerate += other.degenerate;
        self.report.merge(other.report);
        let (a, x, y) = other.best;
        if a > self.best.0 || (a == self.best.0 && (x, y) < (self.best.1, self.best.2)) {
            self.best = other.best;
            self.best_sets = other.best_sets;
        }
    }
}

fn mask_vec(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn exhaustive(g: &Graph, alpha: Option<f64>) -> Accumulator {
    let n = g.n();
    let rows: Vec<u64> = (0..n).map(|u| g.neighbors(u).words().first().copied().unwrap_or(0)).collect();
    let deg: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    let vol_v: u64 = deg.iter().sum();
    let per_x: Vec<Accumulator> = (1u64..(1u64 << n))
        .into_par_iter()
        .map(|xm| {
            let mut acc = Accumulator::new(alpha);
            let c: Vec<u64> = rows.iter().map(|r| (r & xm).count_ones() as u64).collect();
            let vol_x: u64 = (0..n).filter(|&i| xm >> i & 1 == 1).map(|i| deg[i]).sum();
            let (mut ym, mut e, mut vol_y) = (0u64, 0u64, 0u64);
            for gi in 1u64..(1u64 << n) {
                let bit = gi.trailing_zeros() as usize;
                ym ^= 1 << bit;
                if ym >> bit & 1 == 1 {
                    e += c[bit];
                    vol_y += deg[bit];
                } else {
                    e -= c[bit];
                    vol_y -= deg[bit];
                }
                let pair = evaluate(e, vol_x, vol_y, vol_v);
                let y_now = ym;
                acc.push(pair, vol_v, alpha, (xm, y_now), || (mask_vec(xm, n), mask_vec(y_now, n)));
            }
            acc
        })
        .collect();
    let mut total = Accumulator::new(alpha);
    for acc in per_x {
        total.merge(acc);
    }
    total
}

fn sampled(g: &Graph, alpha: Option<f64>, samples: usize, seed: u64) -> Accumulator {
    let n = g.n();
    let vol_v = 2 * g.edge_count() as u64;
    let evaluated: Vec<_> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i as u64);
            let x = random_subset(&mut rng, n);
            let y = random_subset(&mut rng, n);
            let pair = evaluate(
                g.e_between(&x, &y) as u64,
                g.volume(&x) as u64,
                g.volume(&y) as u64,
                vol_v,
            );
            (x, y, pair)
        })
        .collect();
    let mut acc = Accumulator::new(alpha);
    for (i, (x, y, pair)) in evaluated.into_iter().enumerate() {
        acc.push(pair, vol_v, alpha, (i as u64, 0), || (x.to_vec(), y.to_vec()));
    }
    acc
}

pub fn chung_alpha_check(g: &Graph, alpha: Option<f64>, search: SetSearch) -> Result<ChungReport, BoundsError> {
    if g.edge_count() == 0 {
        return Err(BoundsError::EmptyGraph);
    }
    let (acc, mode) = match search {
        SetSearch::Exhaustive => {
            if g.n() > CHUNG_EXHAUSTIVE_MAX_N {
                return Err(BoundsError::TooLarge {
                    n: g.n(),
                    max: CHUNG_EXHAUSTIVE_MAX_N,
                });
            }
            (exhaustive(g, alpha), "exhaustive".to_string())
        }
        SetSearch::Sampled { samples, seed } => (sampled(g, alpha, samples, seed), "sampled".to_string()),
    };
    let mut report = acc.report;
    report.params.insert("n".into(), g.n() as f64);
    if let SetSearch::Sampled { samples, seed } = search {
        report.params.insert("samples".into(), samples as f64);
        report.params.insert("seed".into(), seed as f64);
    }
    let lambda_bar = match laplacian_spectrum(g) {
        Ok(s) => Some(s.lambda_bar),
        Err(BoundsError::NotRegular) | Err(BoundsError::ZeroDegree) => None,
        Err(e) => return Err(e),
    };
    let min_alpha = acc.best.0;
    let (witness_x, witness_y) = acc.best_sets.unwrap_or_default();
    Ok(ChungReport {
        report,
        mode,
        pairs: acc.pairs,
        degenerate_pairs: acc.degenerate,
        min_alpha,
        witness_x,
        witness_y,
        lambda_bar,
        lambda_bar_over_alpha: lambda_bar.filter(|_| min_alpha > 0.0).map(|l| l / min_alpha),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let r = chung_alpha_check(&g, Some(1.0), SetSearch::Exhaustive).unwrap();
        // X = Y = {1}: e = 0, vol = 1 each, |0 − 1/2| = α·√(1·1·1·1)/2 → α = 1.
        assert_eq!(r.min_alpha, 1.0);
        assert_eq!(r.pairs, 9);
        assert!(r.report.pass);
        assert_eq!(r.lambda_bar, Some(1.0));
    }

    #[test]
    fn empty_graph_rejected() {
        assert_eq!(
            chung_alpha_check(&Graph::empty(3), None, SetSearch::Exhaustive).unwrap_err(),
            BoundsError::EmptyGraph
        );
    }

    #[test]
    fn alpha_below_minimum_is_violated() {
        let g = Graph::complete(6);
        let r = chung_alpha_check(&g, None, SetSearch::Exhaustive).unwrap();
        let tight = chung_alpha_check(&g, Some(r.min_alpha * 0.99), SetSearch::Exhaustive).unwrap();
        assert!(!tight.report.pass);
        let loose = chung_alpha_check(&g, Some(r.min_alpha), SetSearch::Exhaustive).unwrap();
        assert!(loose.report.pass);
    }
}
