//! Simple undirected graphs with stable edge indices, the standard families
//! used throughout the toolkit, and the pendant-edge augmentation G(V_i, s).
//!
//! Vertices are dense 0-based integers. Every family builder fixes a canonical
//! numbering (hub or core = vertex 0) so that labelings are reproducible.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Edge-count cap for file-driven paths.
pub const MAX_EDGES: usize = 10_000;

/// Default vertex cap for [`chromatic_number_exact`].
pub const DEFAULT_VERTEX_LIMIT: usize = 16;

/// A set of vertex indices, iterated in ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Ascending iteration; class member order everywhere in the toolkit.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// A simple undirected graph. Edge j is the j-th pair passed at construction
/// and keeps that index for the lifetime of the object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>, // (neighbor, edge index)
}

impl Graph {
    /// Builds a graph from an explicit edge list. Vertex count is
    /// `1 + max index`. Loops and repeated edges are rejected, not repaired.
    /// Disconnected inputs are representable; connectivity is enforced only
    /// at labeling-operation boundaries.
    pub fn from_edge_list(pairs: &[(usize, usize)]) -> Result<Graph> {
        if pairs.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let vertex_count = 1 + pairs
            .iter()
            .map(|&(u, v)| u.max(v))
            .max()
            .expect("non-empty");
        Self::build(vertex_count, pairs)
    }

    fn build(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (idx, &(u, v)) in pairs.iter().enumerate() {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adjacency[u].push((v, idx));
            adjacency[v].push((u, idx));
        }
        Ok(Graph {
            vertex_count,
            edges: pairs.to_vec(),
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    /// Incident `(neighbor, edge index)` pairs of `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.vertex_count
    }

    /// Gate for labeling-facing operations: connected and order >= 3.
    pub fn ensure_labelable(&self) -> Result<()> {
        if self.vertex_count < 3 {
            return Err(Error::TooSmall(self.vertex_count));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// The degree-1 vertices.
    pub fn pendant_vertices(&self) -> VertexSet {
        (0..self.vertex_count)
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    pub fn pendant_count(&self) -> usize {
        (0..self.vertex_count).filter(|&v| self.degree(v) == 1).count()
    }

    /// True when either endpoint of `edge` has degree 1.
    pub fn is_pendant_edge(&self, edge: usize) -> bool {
        let (u, v) = self.edges[edge];
        self.degree(u) == 1 || self.degree(v) == 1
    }

    /// Returns G(targets, s): `s` new pendant edges attached to every vertex
    /// in `targets`. New vertices and edges are appended after the existing
    /// ones, target vertices in ascending order and k = 1..=s within each
    /// target, so edge `e + (a-1)*s + (k-1)` is the k-th pendant edge of the
    /// a-th target. Original edge indices are unchanged.
    pub fn add_pendant_edges(&self, targets: &VertexSet, s: usize) -> Result<Graph> {
        if targets.is_empty() {
            return Err(Error::EmptyTargetSet);
        }
        if s == 0 {
            return Err(Error::DegenerateFamily("s must be at least 1".into()));
        }
        for v in targets.iter() {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
        }
        let mut pairs = self.edges.clone();
        let mut next = self.vertex_count;
        for v in targets.iter() {
            for _ in 0..s {
                pairs.push((v, next));
                next += 1;
            }
        }
        Self::build(next, &pairs)
    }

    /// Parses the edge-list text format: one `u v` pair per line, 0-based
    /// indices, `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.ok_or(Error::Parse {
                    line: lineno + 1,
                    msg: "expected `u v`".into(),
                })?
                .parse::<usize>()
                .map_err(|e| Error::Parse {
                    line: lineno + 1,
                    msg: e.to_string(),
                })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: "expected exactly two vertex indices".into(),
                });
            }
            pairs.push((u, v));
            if pairs.len() > MAX_EDGES {
                return Err(Error::TooLarge {
                    what: "edge count",
                    actual: pairs.len(),
                    limit: MAX_EDGES,
                });
            }
        }
        Graph::from_edge_list(&pairs)
    }

    /// Renders the edge-list text format, with optional leading comments.
    pub fn to_edge_list(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Sorted degree sequence, handy for cheap isomorphism sanity checks.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

/// Path P_n on `n >= 3` vertices, numbered 0..n-1 along the path.
pub fn build_path(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::DegenerateFamily(format!("path needs n >= 3, got {n}")));
    }
    let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edge_list(&pairs)
}

/// Cycle C_n, vertices 0..n-1 in cyclic order.
pub fn build_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::DegenerateFamily(format!("cycle needs n >= 3, got {n}")));
    }
    let mut pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    pairs.push((n - 1, 0));
    Graph::from_edge_list(&pairs)
}

/// Star K_{1,k} for `k >= 2`: center = vertex 0, leaves 1..=k, edge j-1
/// joining the center to leaf j.
pub fn build_star(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::DegenerateFamily(format!("star needs k >= 2, got {k}")));
    }
    let pairs: Vec<_> = (1..=k).map(|leaf| (0, leaf)).collect();
    Graph::from_edge_list(&pairs)
}

/// Wheel W_n for `n >= 3`: hub = vertex 0 joined to the cycle 1..=n.
/// Cycle edges come first, then the spokes (0,1)..(0,n).
pub fn build_wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::DegenerateFamily(format!("wheel needs n >= 3, got {n}")));
    }
    let mut pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    pairs.push((n, 1));
    pairs.extend((1..=n).map(|i| (0, i)));
    Graph::from_edge_list(&pairs)
}

/// Spider Sp(a_1^[n_1], ..., a_t^[n_t]): `n_i` legs of length `a_i` meeting
/// at the core, which is vertex 0. Requires a_i, n_i >= 1 and total leg
/// count >= 3. Vertices are numbered leg by leg, outward from the core, and
/// edges run along each leg in the same order.
pub fn build_spider(legs: &[(usize, usize)]) -> Result<Graph> {
    if legs.is_empty() {
        return Err(Error::DegenerateFamily("spider needs at least one leg group".into()));
    }
    let mut total_legs = 0usize;
    for &(len, mult) in legs {
        if len < 1 || mult < 1 {
            return Err(Error::DegenerateFamily(format!(
                "spider leg group ({len}, {mult}) needs length >= 1 and multiplicity >= 1"
            )));
        }
        total_legs += mult;
    }
    if total_legs < 3 {
        return Err(Error::DegenerateFamily(format!(
            "spider needs at least 3 legs, got {total_legs}"
        )));
    }
    let mut pairs = Vec::new();
    let mut next = 1usize;
    for &(len, mult) in legs {
        for _ in 0..mult {
            let mut prev = 0usize;
            for _ in 0..len {
                pairs.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    Graph::from_edge_list(&pairs)
}

/// Exact chromatic number by backtracking under a greedy upper bound.
/// Capped at `vertex_limit` vertices; the default keeps worst cases
/// sub-second at desk scale.
pub fn chromatic_number_exact(g: &Graph, vertex_limit: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n > vertex_limit {
        return Err(Error::TooLarge {
            what: "vertex count",
            actual: n,
            limit: vertex_limit,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    // Branch on vertices in descending degree order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    let greedy = {
        let mut color = vec![usize::MAX; n];
        let mut max_used = 0;
        for &v in &order {
            let used: BTreeSet<usize> = g
                .incident(v)
                .iter()
                .filter_map(|&(w, _)| (color[w] != usize::MAX).then_some(color[w]))
                .collect();
            let c = (0..).find(|c| !used.contains(c)).expect("free color");
            color[v] = c;
            max_used = max_used.max(c + 1);
        }
        max_used
    };

    for k in 2..greedy {
        let mut color = vec![usize::MAX; n];
        if colorable(g, &order, &mut color, 0, k, 0) {
            return Ok(k);
        }
    }
    Ok(greedy)
}

fn colorable(
    g: &Graph,
    order: &[usize],
    color: &mut [usize],
    pos: usize,
    k: usize,
    max_used: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // Symmetry break: a fresh color only as the single next unused one.
    let cap = k.min(max_used + 1);
    for c in 0..cap {
        if g
            .incident(v)
            .iter()
            .any(|&(w, _)| color[w] == c)
        {
            continue;
        }
        color[v] = c;
        if colorable(g, order, color, pos + 1, k, max_used.max(c + 1)) {
            return true;
        }
        color[v] = usize::MAX;
    }
    false
}
