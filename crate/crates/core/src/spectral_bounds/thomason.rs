//! `|e(X,Y) − p|X||Y|| ≤ ε|Y| + √(|X||Y|(pn + μ|X|))` for graphs with
//! minimum degree `≥ pn` and co-degrees `≤ p²n + μ`; `ε = 1` iff `p|X| < 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{sets_of, BoundReport};
use super::BoundsError;
use crate::graph::{Graph, VertexSet};
use crate::sampling::{random_subset, task_rng};

/// Slack granted to the degree and co-degree hypotheses.
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-9;
/// A pair violates the bound only if `lhs > rhs + VIOLATION_TOLERANCE`.
pub const VIOLATION_TOLERANCE: f64 = 1e-8;

/// Largest `n` for [`thomason_exhaustive`].
const EXHAUSTIVE_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThomasonHypotheses {
    pub min_degree: usize,
    pub degree_threshold: f64,
    pub max_codegree: usize,
    pub codegree_threshold: f64,
    pub hold: bool,
}

pub fn thomason_hypotheses(g: &Graph, p: f64, mu: f64) -> ThomasonHypotheses {
    let n = g.n();
    let min_degree = g.degrees().into_iter().min().unwrap_or(0);
    let mut max_codegree = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            max_codegree = max_codegree.max(g.codegree(u, v));
        }
    }
    let degree_threshold = p * n as f64;
    let codegree_threshold = p * p * n as f64 + mu;
    ThomasonHypotheses {
        min_degree,
        degree_threshold,
        max_codegree,
        codegree_threshold,
        hold: min_degree as f64 >= degree_threshold - HYPOTHESIS_TOLERANCE
            && max_codegree as f64 <= codegree_threshold + HYPOTHESIS_TOLERANCE,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThomasonEntry {
    pub lhs: f64,
    pub rhs: f64,
    pub epsilon: f64,
    pub slack: f64,
    pub hypotheses_hold: bool,
    pub holds: bool,
}

/// `ε = 1` exactly when `p|X| < 1`; values within rounding of 1 count as 1.
fn epsilon(p: f64, x_size: usize) -> f64 {
    if p * (x_size as f64) < 1.0 - 1e-12 {
        1.0
    } else {
        0.0
    }
}

fn rhs(p: f64, mu: f64, n: usize, x_size: usize, y_size: usize) -> f64 {
    let (xs, ys) = (x_size as f64, y_size as f64);
    epsilon(p, x_size) * ys + (xs * ys * (p * n as f64 + mu * xs)).sqrt()
}

/// Evaluates the inequality for one pair `(X, Y)`, `X` nonempty.
pub fn thomason_check(g: &Graph, p: f64, mu: f64, x: &VertexSet, y: &VertexSet) -> ThomasonEntry {
    assert!(!x.is_empty(), "X must be nonempty");
    let hyp = thomason_hypotheses(g, p, mu);
    let lhs = (g.e_between(x, y) as f64 - p * (x.len() * y.len()) as f64).abs();
    let rhs = rhs(p, mu, g.n(), x.len(), y.len());
    ThomasonEntry {
        lhs,
        rhs,
        epsilon: epsilon(p, x.len()),
        slack: rhs - lhs,
        hypotheses_hold: hyp.hold,
        holds: lhs <= rhs + VIOLATION_TOLERANCE,
    }
}

fn base_report(name: &str, g: &Graph, p: f64, mu: f64) -> (BoundReport, ThomasonHypotheses) {
    let hyp = thomason_hypotheses(g, p, mu);
    let mut report = BoundReport::new(name)
        .param("n", g.n() as f64)
        .param("p", p)
        .param("mu", mu)
        .param("min_degree", hyp.min_degree as f64)
        .param("max_codegree", hyp.max_codegree as f64);
    if !hyp.hold {
        report.hypothesis_failed = Some(format!(
            "need min degree {} >= {} and max co-degree {} <= {}",
            hyp.min_degree, hyp.degree_threshold, hyp.max_codegree, hyp.codegree_threshold
        ));
    }
    (report, hyp)
}

/// Every nonempty `X`; for each `X` and each `|Y|` only the worst `Y`, which
/// is a top or bottom prefix of `v ↦ |Γ(v) ∩ X|`. Instances count `(X, |Y|)`
/// pairs.
pub fn thomason_exhaustive(g: &Graph, p: f64, mu: f64) -> Result<BoundReport, BoundsError> {
    let n = g.n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(BoundsError::TooLarge { n, max: EXHAUSTIVE_MAX_N });
    }
    let (mut report, hyp) = base_report("thomason", g, p, mu);
    if !hyp.hold {
        return Ok(report);
    }
    let rows: Vec<u64> = (0..n).map(|u| g.neighbors(u).words().first().copied().unwrap_or(0)).collect();
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        let x_size = mask.count_ones() as usize;
        order.clear();
        order.extend((0..n).map(|v| ((rows[v] & mask).count_ones() as usize, v)));
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let (mut top, mut bottom) = (0usize, 0usize);
        for m in 1..=n {
            top += order[m - 1].0;
            bottom += order[n - m].0;
            let expected = p * (x_size * m) as f64;
            let hi = top as f64 - expected;
            let lo = expected - bottom as f64;
            let lhs = hi.max(lo);
            let r = rhs(p, mu, n, x_size, m);
            report.record(lhs, r, VIOLATION_TOLERANCE, || {
                let y: Vec<usize> = if hi >= lo {
                    order[..m].iter().map(|&(_, v)| v).collect()
                } else {
                    order[n - m..].iter().map(|&(_, v)| v).collect()
                };
                let mut y = y;
                y.sort_unstable();
                ((0..n).filter(|&i| mask >> i & 1 == 1).collect(), y)
            });
        }
    }
    Ok(report)
}

/// `samples` random pairs with log-uniform sizes; sample `i` draws from
/// its own stream, so the report does not depend on thread count.
pub fn thomason_sampled(g: &Graph, p: f64, mu: f64, samples: usize, seed: u64) -> BoundReport {
    let (mut report, hyp) = base_report("thomason", g, p, mu);
    report = report.param("samples", samples as f64).param("seed", seed as f64);
    if !hyp.hold || g.n() == 0 {
        return report;
    }
    let n = g.n();
    let evaluated: Vec<(VertexSet, VertexSet, f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i as u64);
            let x = random_subset(&mut rng, n);
            let y = random_subset(&mut rng, n);
            let lhs = (g.e_between(&x, &y) as f64 - p * (x.len() * y.len()) as f64).abs();
            let r = rhs(p, mu, n, x.len(), y.len());
            (x, y, lhs, r)
        })
        .collect();
    for (x, y, lhs, r) in evaluated {
        report.record(lhs, r, VIOLATION_TOLERANCE, || sets_of(&x, &y));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_passes() {
        let n = 8;
        let g = Graph::complete(n);
        let p = (n as f64 - 1.0) / n as f64;
        let mu = n as f64 - 2.0 - p * p * n as f64;
        let r = thomason_exhaustive(&g, p, mu).unwrap();
        assert!(r.hypothesis_failed.is_none());
        assert!(r.pass, "{:?}", r.violations.first());
        assert_eq!(r.instances, 255 * 8);
    }

    #[test]
    fn epsilon_branch() {
        let g = Graph::complete(5);
        let x = VertexSet::from_indices(5, [0]);
        let y = VertexSet::full(5);
        let e = thomason_check(&g, 0.5, 2.0, &x, &y);
        assert_eq!(e.epsilon, 1.0);
        let x2 = VertexSet::from_indices(5, [0, 1]);
        assert_eq!(thomason_check(&g, 0.5, 2.0, &x2, &y).epsilon, 0.0);
    }

    #[test]
    fn failed_hypotheses_are_not_violations() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let r = thomason_exhaustive(&g, 0.5, 0.0).unwrap();
        assert!(r.hypothesis_failed.is_some());
        assert!(r.pass);
        assert_eq!(r.instances, 0);
    }
}
