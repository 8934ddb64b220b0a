use super::ConstructionError;
use crate::graph::Graph;

/// `G ∪ K_⌊pn⌋`, the clique on the last `⌊pn⌋` labels.
pub fn sparse_union(g: &Graph, p: f64) -> Result<Graph, ConstructionError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(ConstructionError::BadDensity(p));
    }
    let m = (p * g.n() as f64).floor() as usize;
    if m < 1 {
        return Err(ConstructionError::EmptyClique { n: g.n(), p });
    }
    Ok(g.disjoint_union(&Graph::complete(m)))
}
