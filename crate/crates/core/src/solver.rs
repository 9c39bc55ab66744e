//! Exact computation of the local antimagic chromatic number by exhaustive
//! bijection search, plus certification of exactness through the pendant
//! lower bound.
//!
//! The search assigns labels to edges depth-first along a fixed order (a BFS
//! over the line graph, which closes vertex sums early), prunes a partial
//! assignment as soon as two adjacent fully-labeled vertices collide or the
//! completed vertices already show as many distinct colors as the best
//! labeling found, and stops outright when the best matches the lower bound
//! max(2, pendants + 1, chromatic number). The label of the first edge in
//! the order shards the space into q independent tasks; sharded runs share
//! only an atomic best-so-far, so the reported value is deterministic while
//! the witness may vary.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{chromatic_number_exact, Graph, DEFAULT_VERTEX_LIMIT};
use crate::labeling::{induced_colors, is_local_antimagic, EdgeLabeling};

/// Default edge cap for exhaustive search: 10! leaves stay sub-second.
pub const DEFAULT_EDGE_LIMIT: usize = 10;

/// Absolute edge cap; 11 edges is already ~40M leaves.
pub const HARD_EDGE_LIMIT: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    Exhaustive,
    CertifiedByPendantBound,
}

/// An exact value of the local antimagic chromatic number with a witness.
#[derive(Debug, Clone)]
pub struct SolverResult {
    pub chi_la: usize,
    pub witness: EdgeLabeling,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub method: SolveMethod,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub edge_limit: usize,
    /// Worker threads for the sharded search; 0 uses the default pool,
    /// 1 runs the shards sequentially.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            edge_limit: DEFAULT_EDGE_LIMIT,
            jobs: 0,
        }
    }
}

/// max(2, pendant count + 1, chromatic number); every local antimagic
/// labeling needs at least this many colors.
pub fn chi_la_lower_bound(g: &Graph) -> Result<usize> {
    let chi = chromatic_number_exact(g, DEFAULT_VERTEX_LIMIT.max(g.vertex_count()))?;
    Ok(2.max(g.pendant_count() + 1).max(chi))
}

/// Edge order for label assignment: BFS over the line graph from edge 0.
fn assignment_order(g: &Graph) -> Vec<usize> {
    let q = g.edge_count();
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); q];
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                neighbors[inc[i].1].push(inc[j].1);
                neighbors[inc[j].1].push(inc[i].1);
            }
        }
    }
    let mut order = Vec::with_capacity(q);
    let mut seen = vec![false; q];
    let mut queue = VecDeque::new();
    queue.push_back(0);
    seen[0] = true;
    while let Some(e) = queue.pop_front() {
        order.push(e);
        let mut next: Vec<usize> = neighbors[e].iter().copied().filter(|&f| !seen[f]).collect();
        next.sort_unstable();
        next.dedup();
        for f in next {
            seen[f] = true;
            queue.push_back(f);
        }
    }
    debug_assert_eq!(order.len(), q, "line graph of a connected graph is connected");
    order
}

struct Dfs<'a> {
    graph: &'a Graph,
    order: &'a [usize],
    q: usize,
    labels: Vec<u64>,
    used: u32,
    sum: Vec<u64>,
    remaining: Vec<usize>,
    /// Color multiset over completed vertices, tiny so linear scans win.
    completed: Vec<(u64, u32)>,
    distinct: usize,
    nodes: u64,
}

impl<'a> Dfs<'a> {
    fn new(graph: &'a Graph, order: &'a [usize]) -> Self {
        let q = graph.edge_count();
        Dfs {
            graph,
            order,
            q,
            labels: vec![0; q],
            used: 0,
            sum: vec![0; graph.vertex_count()],
            remaining: (0..graph.vertex_count()).map(|v| graph.degree(v)).collect(),
            completed: Vec::with_capacity(graph.vertex_count()),
            distinct: 0,
            nodes: 0,
        }
    }

    /// Books `label` onto `edge`; false means a completed adjacent pair
    /// collided. The caller must always un-apply afterwards.
    fn apply(&mut self, edge: usize, label: u64) -> bool {
        let (u, v) = self.graph.endpoints(edge);
        self.labels[edge] = label;
        self.used |= 1 << (label - 1);
        let mut ok = true;
        for w in [u, v] {
            self.sum[w] += label;
            self.remaining[w] -= 1;
            if self.remaining[w] == 0 {
                let color = self.sum[w];
                if self
                    .graph
                    .incident(w)
                    .iter()
                    .any(|&(x, _)| self.remaining[x] == 0 && self.sum[x] == color)
                {
                    ok = false;
                }
                match self.completed.iter_mut().find(|(c, _)| *c == color) {
                    Some(entry) => entry.1 += 1,
                    None => {
                        self.completed.push((color, 1));
                        self.distinct += 1;
                    }
                }
            }
        }
        ok
    }

    fn unapply(&mut self, edge: usize, label: u64) {
        let (u, v) = self.graph.endpoints(edge);
        for w in [u, v] {
            if self.remaining[w] == 0 {
                let color = self.sum[w];
                let idx = self
                    .completed
                    .iter()
                    .position(|(c, _)| *c == color)
                    .expect("completed color is booked");
                self.completed[idx].1 -= 1;
                if self.completed[idx].1 == 0 {
                    self.completed.swap_remove(idx);
                    self.distinct -= 1;
                }
            }
            self.remaining[w] += 1;
            self.sum[w] -= label;
        }
        self.labels[edge] = 0;
        self.used &= !(1 << (label - 1));
    }
}

struct ShardOutcome {
    best: Option<(usize, Vec<u64>)>,
    nodes: u64,
}

struct MinSearch<'a> {
    dfs: Dfs<'a>,
    best_global: &'a AtomicUsize,
    stop: &'a AtomicBool,
    lower: usize,
    best_local: usize,
    witness: Option<Vec<u64>>,
}

impl<'a> MinSearch<'a> {
    fn run(&mut self, pos: usize) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if pos == self.dfs.q {
            let count = self.dfs.distinct;
            if count < self.best_local {
                self.best_local = count;
                self.witness = Some(self.dfs.labels.clone());
            }
            self.best_global.fetch_min(count, Ordering::Relaxed);
            if count <= self.lower {
                self.stop.store(true, Ordering::Relaxed);
            }
            return;
        }
        let edge = self.dfs.order[pos];
        for label in 1..=self.dfs.q as u64 {
            if self.dfs.used & (1 << (label - 1)) != 0 {
                continue;
            }
            self.dfs.nodes += 1;
            let ok = self.dfs.apply(edge, label);
            // No strict improvement is possible once the completed vertices
            // already show best-many distinct colors.
            if ok && self.dfs.distinct < self.best_global.load(Ordering::Relaxed) {
                self.run(pos + 1);
            }
            self.dfs.unapply(edge, label);
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Exact minimum of c(f) over all q! bijections.
pub fn solve_chi_la(g: &Graph, opts: SolveOptions) -> Result<SolverResult> {
    g.ensure_labelable()?;
    if opts.edge_limit > HARD_EDGE_LIMIT {
        return Err(Error::TooLarge {
            what: "edge limit",
            actual: opts.edge_limit,
            limit: HARD_EDGE_LIMIT,
        });
    }
    let q = g.edge_count();
    if q > opts.edge_limit {
        return Err(Error::TooLarge {
            what: "edge count",
            actual: q,
            limit: opts.edge_limit,
        });
    }
    let lower = chi_la_lower_bound(g)?;
    let order = assignment_order(g);
    let best_global = AtomicUsize::new(usize::MAX);
    let stop = AtomicBool::new(false);

    let run_shard = |first: u64| -> ShardOutcome {
        let mut search = MinSearch {
            dfs: Dfs::new(g, &order),
            best_global: &best_global,
            stop: &stop,
            lower,
            best_local: usize::MAX,
            witness: None,
        };
        if !stop.load(Ordering::Relaxed) {
            let edge = order[0];
            search.dfs.nodes += 1;
            let ok = search.dfs.apply(edge, first);
            if ok {
                search.run(1);
            }
            search.dfs.unapply(edge, first);
        }
        ShardOutcome {
            best: search.witness.map(|w| (search.best_local, w)),
            nodes: search.dfs.nodes,
        }
    };

    let shards: Vec<u64> = (1..=q as u64).collect();
    let outcomes: Vec<ShardOutcome> = match opts.jobs {
        1 => shards.iter().map(|&first| run_shard(first)).collect(),
        0 => shards.par_iter().map(|&first| run_shard(first)).collect(),
        jobs => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("failed to build solver thread pool");
            pool.install(|| shards.par_iter().map(|&first| run_shard(first)).collect())
        }
    };

    let nodes_explored: u64 = outcomes.iter().map(|o| o.nodes).sum();
    let best = outcomes
        .into_iter()
        .filter_map(|o| o.best)
        .min_by_key(|(count, _)| *count)
        .expect("every connected graph of order >= 3 admits a local antimagic labeling");
    let witness = EdgeLabeling::from_labels(best.1, q)?;
    debug_assert!(is_local_antimagic(g, &witness)?);
    Ok(SolverResult {
        chi_la: best.0,
        witness,
        exhaustive: true,
        nodes_explored,
        method: SolveMethod::Exhaustive,
    })
}

struct ProfileSearch<'a> {
    dfs: Dfs<'a>,
    /// (color, still-needed multiplicity).
    wanted: Vec<(u64, usize)>,
    found: Option<Vec<u64>>,
}

impl<'a> ProfileSearch<'a> {
    fn run(&mut self, pos: usize) {
        if self.found.is_some() {
            return;
        }
        if pos == self.dfs.q {
            self.found = Some(self.dfs.labels.clone());
            return;
        }
        let edge = self.dfs.order[pos];
        for label in 1..=self.dfs.q as u64 {
            if self.dfs.used & (1 << (label - 1)) != 0 {
                continue;
            }
            self.dfs.nodes += 1;
            let mut consumed = 0;
            let ok = self.dfs.apply(edge, label) && self.consume(edge, &mut consumed);
            if ok {
                self.run(pos + 1);
            }
            self.restore(edge, consumed);
            self.dfs.unapply(edge, label);
            if self.found.is_some() {
                return;
            }
        }
    }

    /// Colors of the endpoints that `edge` completed, in endpoint order.
    fn completed_colors(&self, edge: usize) -> [Option<u64>; 2] {
        let (u, v) = self.dfs.graph.endpoints(edge);
        let color = |w: usize| (self.dfs.remaining[w] == 0).then(|| self.dfs.sum[w]);
        [color(u), color(v)]
    }

    /// Charges the colors of vertices completed by `edge` against the
    /// target multiset; false when a color is not wanted. `consumed` counts
    /// the successful decrements so a failed charge unwinds exactly.
    fn consume(&mut self, edge: usize, consumed: &mut usize) -> bool {
        for color in self.completed_colors(edge).into_iter().flatten() {
            match self.wanted.iter_mut().find(|(c, _)| *c == color) {
                Some(entry) if entry.1 > 0 => {
                    entry.1 -= 1;
                    *consumed += 1;
                }
                _ => return false,
            }
        }
        true
    }

    fn restore(&mut self, edge: usize, consumed: usize) {
        for color in self
            .completed_colors(edge)
            .into_iter()
            .flatten()
            .take(consumed)
        {
            let entry = self
                .wanted
                .iter_mut()
                .find(|(c, _)| *c == color)
                .expect("consumed color is tracked");
            entry.1 += 1;
        }
    }
}

/// Finds any local antimagic labeling whose induced color multiset equals
/// `target` (pairs of color and multiplicity), or None after exhausting the
/// search space. Targets whose weighted sum misses q(q+1) or whose size
/// misses the vertex count are immediately hopeless.
pub fn find_labeling_with_profile(
    g: &Graph,
    target: &[(u64, usize)],
    edge_limit: usize,
) -> Result<Option<EdgeLabeling>> {
    g.ensure_labelable()?;
    if edge_limit > HARD_EDGE_LIMIT {
        return Err(Error::TooLarge {
            what: "edge limit",
            actual: edge_limit,
            limit: HARD_EDGE_LIMIT,
        });
    }
    let q = g.edge_count();
    if q > edge_limit {
        return Err(Error::TooLarge {
            what: "edge count",
            actual: q,
            limit: edge_limit,
        });
    }
    let mut wanted: Vec<(u64, usize)> = Vec::new();
    for &(color, mult) in target {
        match wanted.iter_mut().find(|(c, _)| *c == color) {
            Some(entry) => entry.1 += mult,
            None => wanted.push((color, mult)),
        }
    }
    let total: usize = wanted.iter().map(|&(_, m)| m).sum();
    let weighted: u64 = wanted.iter().map(|&(c, m)| c * m as u64).sum();
    let q64 = q as u64;
    if total != g.vertex_count() || weighted != q64 * (q64 + 1) {
        return Ok(None);
    }

    let order = assignment_order(g);
    let mut search = ProfileSearch {
        dfs: Dfs::new(g, &order),
        wanted,
        found: None,
    };
    search.run(0);
    match search.found {
        Some(labels) => {
            let witness = EdgeLabeling::from_labels(labels, q)?;
            debug_assert!(is_local_antimagic(g, &witness)?);
            Ok(Some(witness))
        }
        None => Ok(None),
    }
}

/// Outcome of pendant-bound certification.
#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Certified(SolverResult),
    /// The labeling only gives an upper bound of `color_count`.
    NotCertifiable {
        color_count: usize,
        pendant_count: usize,
    },
}

/// A local antimagic labeling with exactly pendant-count + 1 colors meets
/// the pendant lower bound, so its color count is the exact chromatic
/// number; anything looser is just an upper bound.
pub fn certify(g: &Graph, f: &EdgeLabeling) -> Result<CertifyOutcome> {
    if !is_local_antimagic(g, f)? {
        return Err(Error::NotLocalAntimagic);
    }
    let pendant_count = g.pendant_count();
    let count = induced_colors(g, f)?.distinct_count();
    if count == pendant_count + 1 {
        Ok(CertifyOutcome::Certified(SolverResult {
            chi_la: count,
            witness: f.clone(),
            exhaustive: false,
            nodes_explored: 0,
            method: SolveMethod::CertifiedByPendantBound,
        }))
    } else {
        Ok(CertifyOutcome::NotCertifiable {
            color_count: count,
            pendant_count,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{augment_and_label, label_spider_2n};
    use crate::graph::{build_cycle, build_path, build_spider, build_star, build_wheel};
    use itertools::Itertools;

    fn naive_chi_la(g: &Graph) -> usize {
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

    #[test]
    fn solve_small_known_families() {
        let opts = SolveOptions::default();
        assert_eq!(solve_chi_la(&build_spider(&[(2, 3)]).unwrap(), opts).unwrap().chi_la, 4);
        assert_eq!(solve_chi_la(&build_star(4).unwrap(), opts).unwrap().chi_la, 5);
        assert_eq!(solve_chi_la(&build_path(5).unwrap(), opts).unwrap().chi_la, 3);
    }

    #[test]
    fn solve_witness_is_valid() {
        let g = build_spider(&[(2, 3)]).unwrap();
        let result = solve_chi_la(&g, SolveOptions::default()).unwrap();
        assert!(is_local_antimagic(&g, &result.witness).unwrap());
        assert_eq!(
            induced_colors(&g, &result.witness).unwrap().distinct_count(),
            result.chi_la
        );
        assert!(result.exhaustive);
        assert_eq!(result.method, SolveMethod::Exhaustive);
    }

    #[test]
    fn solve_respects_limits_and_gates() {
        let big = build_path(14).unwrap(); // 13 edges
        assert!(matches!(
            solve_chi_la(&big, SolveOptions::default()),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            solve_chi_la(
                &big,
                SolveOptions {
                    edge_limit: 20,
                    jobs: 1
                }
            ),
            Err(Error::TooLarge { .. })
        ));
        let disconnected = Graph::from_edge_list(&[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            solve_chi_la(&disconnected, SolveOptions::default()),
            Err(Error::Disconnected)
        ));
        let k2 = Graph::from_edge_list(&[(0, 1)]).unwrap();
        assert!(matches!(
            solve_chi_la(&k2, SolveOptions::default()),
            Err(Error::TooSmall(2))
        ));
    }

    #[test]
    fn solve_at_the_hard_edge_cap() {
        // Stars meet the pendant bound with their first complete labeling,
        // so the 11-edge ceiling stays cheap to exercise.
        let g = build_star(11).unwrap();
        let result = solve_chi_la(
            &g,
            SolveOptions {
                edge_limit: HARD_EDGE_LIMIT,
                jobs: 1,
            },
        )
        .unwrap();
        assert_eq!(result.chi_la, 12);
    }

    #[test]
    fn solve_matches_naive_oracle_on_fixed_graphs() {
        let graphs = vec![
            build_path(4).unwrap(),
            build_cycle(4).unwrap(),
            build_star(3).unwrap(),
            build_cycle(5).unwrap(),
            build_spider(&[(1, 2), (2, 1)]).unwrap(),
        ];
        for g in graphs {
            let solved = solve_chi_la(&g, SolveOptions { edge_limit: 10, jobs: 1 }).unwrap();
            assert_eq!(solved.chi_la, naive_chi_la(&g));
        }
    }

    #[test]
    fn solve_value_is_job_count_independent() {
        for g in [build_spider(&[(2, 3)]).unwrap(), build_wheel(4).unwrap()] {
            let a = solve_chi_la(&g, SolveOptions { edge_limit: 10, jobs: 1 }).unwrap();
            let b = solve_chi_la(&g, SolveOptions { edge_limit: 10, jobs: 4 }).unwrap();
            assert_eq!(a.chi_la, b.chi_la);
            assert_eq!(a.exhaustive, b.exhaustive);
        }
    }

    #[test]
    fn solve_obeys_lower_bounds() {
        for g in [
            build_path(6).unwrap(),
            build_star(5).unwrap(),
            build_spider(&[(2, 4)]).unwrap(),
            build_wheel(4).unwrap(),
        ] {
            let result = solve_chi_la(&g, SolveOptions::default()).unwrap();
            assert!(result.chi_la > g.pendant_count());
            assert!(result.chi_la >= chromatic_number_exact(&g, 16).unwrap());
        }
    }

    #[test]
    fn profile_search_recovers_p3() {
        let g = build_path(3).unwrap();
        let found = find_labeling_with_profile(&g, &[(1, 1), (3, 1), (2, 1)], 10)
            .unwrap()
            .expect("P_3 has the (1,3,2) labeling");
        assert_eq!(found.labels(), &[1, 2]);
    }

    #[test]
    fn profile_search_rejects_wrong_sums() {
        let g = build_path(3).unwrap();
        assert!(find_labeling_with_profile(&g, &[(1, 1), (4, 1), (2, 1)], 10)
            .unwrap()
            .is_none());
        assert!(find_labeling_with_profile(&g, &[(1, 2), (2, 2)], 10)
            .unwrap()
            .is_none());
    }

    #[test]
    fn profile_search_on_w4() {
        let g = build_wheel(4).unwrap();
        let found = find_labeling_with_profile(&g, &[(11, 2), (15, 2), (20, 1)], 10)
            .unwrap()
            .expect("three-color W_4 labeling exists");
        assert!(is_local_antimagic(&g, &found).unwrap());
        let mut colors = induced_colors(&g, &found).unwrap().colors().to_vec();
        colors.sort_unstable();
        assert_eq!(colors, vec![11, 11, 15, 15, 20]);
        // Negative control: same weighted sum, no realization.
        assert!(find_labeling_with_profile(&g, &[(10, 2), (16, 2), (20, 1)], 10)
            .unwrap()
            .is_none());
    }

    #[test]
    fn certify_examples() {
        let star = crate::constructions::label_star(5).unwrap();
        match certify(&star.graph, &star.labeling).unwrap() {
            CertifyOutcome::Certified(result) => {
                assert_eq!(result.chi_la, 6);
                assert_eq!(result.method, SolveMethod::CertifiedByPendantBound);
                assert!(!result.exhaustive);
            }
            other => panic!("expected certification, got {other:?}"),
        }

        let spider = label_spider_2n(4).unwrap();
        match certify(&spider.graph, &spider.labeling).unwrap() {
            CertifyOutcome::NotCertifiable {
                color_count,
                pendant_count,
            } => {
                assert_eq!(color_count, 6);
                assert_eq!(pendant_count, 4);
            }
            other => panic!("expected an upper bound only, got {other:?}"),
        }
    }

    #[test]
    fn certify_rejects_invalid_labelings() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        let f = EdgeLabeling::from_labels(vec![4, 3, 1, 2], 4).unwrap();
        assert!(matches!(certify(&g, &f), Err(Error::NotLocalAntimagic)));
    }

    #[test]
    fn certified_augmentation_of_w4() {
        let g = build_wheel(4).unwrap();
        let f = EdgeLabeling::from_labels(vec![2, 7, 3, 4, 5, 6, 1, 8], 8).unwrap();
        let built = augment_and_label(&g, &f, 3, 12).unwrap();
        match certify(&built.graph, &built.labeling).unwrap() {
            CertifyOutcome::Certified(result) => assert_eq!(result.chi_la, 13),
            other => panic!("expected certification, got {other:?}"),
        }
    }
}
