//! All simple graphs on `n` vertices up to isomorphism, for small `n`.
//!
//! Classes on `n` vertices are grown from the classes on `n − 1` by adding a
//! vertex with every possible neighbourhood; duplicates are removed through
//! a canonical form. That form is the smallest upper-triangle bitmask over
//! all relabelings that list vertices by decreasing degree.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Largest `n` accepted by [`nonisomorphic_graphs`].
pub const MAX_ENUMERATION_N: usize = 8;

fn pair_bit(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Upper-triangle bitmask; pair `(i, j)`, `i < j`, in lexicographic order.
pub fn edge_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n * n.saturating_sub(1) / 2 <= 64, "graph too large for a mask");
    g.edges().into_iter().fold(0u64, |m, (u, v)| m | 1 << pair_bit(n, u, v))
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> pair_bit(n, i, j) & 1 == 1 {
                g.add_edge_unchecked(i, j);
            }
        }
    }
    g
}

/// Canonical form: equal for two graphs iff they are isomorphic.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    let deg = g.degrees();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    for v in by_degree {
        match groups.last_mut() {
            Some(grp) if deg[grp[0]] == deg[v] => grp.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let slots: Vec<usize> = groups.iter().enumerate().flat_map(|(k, grp)| grp.iter().map(move |_| k)).collect();
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut best = u64::MAX;
    search(g, &groups, &slots, &mut order, &mut used, &mut best);
    best
}

/// `order[pos]` is the vertex placed at new label `pos`.
fn search(g: &Graph, groups: &[Vec<usize>], slots: &[usize], order: &mut Vec<usize>, used: &mut [bool], best: &mut u64) {
    let n = g.n();
    let pos = order.len();
    if pos == n {
        let mut mask = 0u64;
        for i in 0..n {
            for j in (i + 1)..n {
                if g.has_edge(order[i], order[j]) {
                    mask |= 1 << pair_bit(n, i, j);
                }
            }
        }
        *best = (*best).min(mask);
        return;
    }
    for &v in &groups[slots[pos]] {
        if !used[v] {
            used[v] = true;
            order.push(v);
            search(g, groups, slots, order, used, best);
            order.pop();
            used[v] = false;
        }
    }
}

/// One representative per isomorphism class, ordered by canonical mask.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_ENUMERATION_N, "enumeration supports n <= {MAX_ENUMERATION_N}");
    let mut classes: BTreeSet<u64> = BTreeSet::from([0]);
    for m in 1..n {
        let mut next = BTreeSet::new();
        for &mask in &classes {
            let base = graph_from_mask(m, mask);
            for nbrs in 0u64..(1 << m) {
                let mut g = Graph::empty(m + 1);
                for (u, v) in base.edges() {
                    g.add_edge_unchecked(u, v);
                }
                for u in 0..m {
                    if nbrs >> u & 1 == 1 {
                        g.add_edge_unchecked(u, m);
                    }
                }
                next.insert(canonical_mask(&g));
            }
        }
        classes = next;
    }
    classes.into_iter().map(|mask| graph_from_mask(n, mask)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn labeled_enumeration_agrees() {
        for n in 1..=5 {
            let pairs = n * (n - 1) / 2;
            let forms: BTreeSet<u64> = (0u64..(1 << pairs))
                .map(|m| canonical_mask(&graph_from_mask(n, m)))
                .collect();
            let grown: BTreeSet<u64> = nonisomorphic_graphs(n).iter().map(edge_mask).collect();
            assert_eq!(forms, grown, "n = {n}");
        }
    }

    #[test]
    fn mask_round_trip() {
        let g = Graph::from_edges(5, [(0, 4), (1, 2), (3, 4)]).unwrap();
        assert_eq!(graph_from_mask(5, edge_mask(&g)), g);
    }
}
