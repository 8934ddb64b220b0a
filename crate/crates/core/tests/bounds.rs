use sigdisc::constructions::{block_graph, block_plan, qpt_graph};
use sigdisc::spectral_bounds::{
    chung_alpha_check, family_properties, laplacian_spectrum, thomason_exhaustive, thomason_hypotheses, thomason_sampled,
    BoundsError, FamilyMember, SetSearch,
};
use sigdisc::{Graph, VertexSet};

/// Minimal α over all pairs, straight from the definition.
fn naive_alpha(g: &Graph) -> f64 {
    let n = g.n();
    let vol_v = g.volume(&VertexSet::full(n)) as f64;
    let mut best = 0.0f64;
    for xm in 0u64..(1 << n) {
        let x = VertexSet::from_mask(n, xm);
        for ym in 0u64..(1 << n) {
            let y = VertexSet::from_mask(n, ym);
            let (vx, vy) = (g.volume(&x) as f64, g.volume(&y) as f64);
            let den = vx * vy * (vol_v - vx) * (vol_v - vy);
            if den > 0.0 {
                let lhs = (g.e_between(&x, &y) as f64 - vx * vy / vol_v).abs();
                best = best.max(lhs * vol_v / den.sqrt());
            }
        }
    }
    best
}

#[test]
fn chung_complete_six() {
    let g = Graph::complete(6);
    let r = chung_alpha_check(&g, None, SetSearch::Exhaustive).unwrap();
    assert!((r.min_alpha - 0.2).abs() < 1e-12);
    assert!((r.min_alpha - naive_alpha(&g)).abs() < 1e-12);
    assert!((r.lambda_bar.unwrap() - 0.2).abs() < 1e-12);
    assert_eq!(r.pairs, 63 * 63);
}

#[test]
fn chung_matches_naive_on_irregular_graphs() {
    let path = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
    for g in [path, star] {
        let r = chung_alpha_check(&g, None, SetSearch::Exhaustive).unwrap();
        assert!((r.min_alpha - naive_alpha(&g)).abs() < 1e-12);
        assert!(r.lambda_bar.is_none());
    }
}

#[test]
fn chung_rejects_large_exhaustive() {
    let g = Graph::complete(15);
    assert!(matches!(
        chung_alpha_check(&g, None, SetSearch::Exhaustive),
        Err(BoundsError::TooLarge { n: 15, .. })
    ));
}

#[test]
fn block_graph_laplacian() {
    let plan = block_plan(13).unwrap();
    let g = block_graph(&plan);
    let lap = laplacian_spectrum(&g).unwrap();
    assert_eq!(lap.degree, 26);
    assert!(lap.lambdas[0].abs() < 1e-9);
    let k = plan.k as f64;
    assert!(lap.lambda_bar >= k.ln() / (2.0 * k) - 1e-8);
    assert!((lap.lambda_bar - lap.lambda_bar_adjacency).abs() <= 1e-9);
    // λ_i = 1 − μ_i/d, matched after sorting.
    let mut from_mu: Vec<f64> = lap.adjacency_eigenvalues.iter().map(|m| 1.0 - m / 26.0).collect();
    from_mu.sort_by(f64::total_cmp);
    for (a, b) in lap.lambdas.iter().zip(&from_mu) {
        assert!((a - b).abs() <= 1e-9);
    }
    let sampled = chung_alpha_check(&g, None, SetSearch::Sampled { samples: 500, seed: 2 }).unwrap();
    assert!(sampled.min_alpha > 0.0);
    assert_eq!(sampled.pairs, 500);
}

#[test]
fn thomason_on_qpt_101() {
    let (g, d) = qpt_graph(101, 50).unwrap();
    let p = d as f64 / 101.0;
    let max_codeg = thomason_hypotheses(&g, p, 0.0).max_codegree as f64;
    let mu = max_codeg - p * p * 101.0;
    let hyp = thomason_hypotheses(&g, p, mu);
    assert!(hyp.hold);
    let r = thomason_sampled(&g, p, mu, 10_000, 4);
    assert_eq!(r.instances, 10_000);
    assert!(r.pass, "{:?}", r.violations.first());
}

#[test]
fn thomason_exhaustive_on_small_regular_graphs() {
    let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    for (g, p) in [(c5, 0.4), (Graph::complete(7), 6.0 / 7.0)] {
        let r = thomason_exhaustive(&g, p, g.n() as f64).unwrap();
        assert!(r.hypothesis_failed.is_none());
        assert!(r.pass);
        assert!(r.max_slack.unwrap() <= 1e-8);
    }
}

#[test]
fn family_of_complete_graphs() {
    let members: Vec<FamilyMember> = [5usize, 10, 20]
        .iter()
        .map(|&n| FamilyMember {
            graph: Graph::complete(n),
            p: (n - 1) as f64 / n as f64,
            scale_n: n,
        })
        .collect();
    let r = family_properties(&members, 100, 3).unwrap();
    assert!(r.members.iter().all(|m| (m.mu1_ratio - 1.0).abs() < 1e-12));
    assert!(r.sigma2_ratio_decreasing);
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"witness_X\""));
}
