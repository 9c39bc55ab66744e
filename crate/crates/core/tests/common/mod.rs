//! Shared helpers for the integration suites: an oracle for the chromatic
//! value that enumerates every bijection without pruning, and a seeded
//! generator of small connected graphs.
#![allow(dead_code)] // each test target uses its own subset

use chila_core::{induced_colors, is_local_antimagic, EdgeLabeling, Graph};
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::Rng;

/// Minimum color count over all q! bijections by plain enumeration. Fully
/// independent of the solver's ordering, sharding and pruning.
pub fn naive_chi_la(g: &Graph) -> usize {
    let q = g.edge_count();
    let mut best = usize::MAX;
    for perm in (1..=q as u64).permutations(q) {
        let f = EdgeLabeling::from_labels(perm, q).unwrap();
        if is_local_antimagic(g, &f).unwrap() {
            best = best.min(induced_colors(g, &f).unwrap().distinct_count());
        }
    }
    best
}

/// Random connected simple graph: a spanning tree on 3..=6 vertices plus a
/// few extra edges, capped at `max_edges` total.
pub fn random_connected_graph(rng: &mut StdRng, max_edges: usize) -> Graph {
    let n = rng.random_range(3..=6);
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let budget = max_edges.saturating_sub(pairs.len()).min(3);
    let extra = rng.random_range(0..=budget);
    let mut added = 0;
    let mut tries = 0;
    while added < extra && tries < 64 {
        tries += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        let key = (u.min(v), u.max(v));
        if u != v && !pairs.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
            pairs.push((u, v));
            added += 1;
        }
    }
    Graph::from_edge_list(&pairs).unwrap()
}

/// Every bijective labeling of `g`, for exhaustive audits of small graphs.
pub fn all_labelings(g: &Graph) -> impl Iterator<Item = EdgeLabeling> + '_ {
    let q = g.edge_count();
    (1..=q as u64)
        .permutations(q)
        .map(move |perm| EdgeLabeling::from_labels(perm, q).unwrap())
}
