//! Edge labelings, induced vertex colors, the local antimagic predicate, and
//! the (t, r, b, n_i, c_i) color profile of a labeling.
//!
//! A labeling f is a bijection from the q edges onto {1..q}. The induced
//! color of a vertex is the sum of the labels on its incident edges; f is
//! local antimagic when adjacent vertices always get distinct colors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_EDGES};

/// A bijection from edge indices onto {1..q}, stored by edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    labels: Vec<u64>,
}

impl EdgeLabeling {
    /// Validates that `labels` is a bijection onto {1..edge_count}.
    pub fn from_labels(labels: Vec<u64>, edge_count: usize) -> Result<EdgeLabeling> {
        if labels.len() != edge_count {
            return Err(Error::LabelingMismatch(format!(
                "expected {} labels, got {}",
                edge_count,
                labels.len()
            )));
        }
        let q = edge_count as u64;
        let mut seen = vec![false; edge_count];
        for &l in &labels {
            if l < 1 || l > q {
                return Err(Error::LabelingMismatch(format!(
                    "label {l} outside 1..={q}"
                )));
            }
            let slot = &mut seen[(l - 1) as usize];
            if *slot {
                return Err(Error::LabelingMismatch(format!("label {l} repeated")));
            }
            *slot = true;
        }
        Ok(EdgeLabeling { labels })
    }

    /// The identity labeling: edge j gets label j+1.
    pub fn identity(edge_count: usize) -> EdgeLabeling {
        EdgeLabeling {
            labels: (1..=edge_count as u64).collect(),
        }
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label_of(&self, edge: usize) -> u64 {
        self.labels[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    /// Index of the edge carrying the maximum label q.
    pub fn max_label_edge(&self) -> usize {
        let q = self.labels.len() as u64;
        self.labels
            .iter()
            .position(|&l| l == q)
            .expect("bijection carries q")
    }

    fn check_against(&self, g: &Graph) -> Result<()> {
        if self.labels.len() != g.edge_count() {
            return Err(Error::LabelingMismatch(format!(
                "labeling has {} labels for a graph with {} edges",
                self.labels.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }

    /// Parses the labeling file format: one `edge_index label` pair per line,
    /// `#` starts a comment (the writer's trailing color block is ignored).
    pub fn parse(text: &str, edge_count: usize) -> Result<EdgeLabeling> {
        if edge_count > MAX_EDGES {
            return Err(Error::TooLarge {
                what: "edge count",
                actual: edge_count,
                limit: MAX_EDGES,
            });
        }
        let mut labels = vec![0u64; edge_count];
        let mut filled = vec![false; edge_count];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut field = |name: &str| -> Result<u64> {
                it.next()
                    .ok_or(Error::Parse {
                        line: lineno + 1,
                        msg: format!("missing {name}"),
                    })?
                    .parse::<u64>()
                    .map_err(|e| Error::Parse {
                        line: lineno + 1,
                        msg: e.to_string(),
                    })
            };
            let edge = field("edge index")? as usize;
            let label = field("label")?;
            if edge >= edge_count {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("edge index {edge} out of range 0..{edge_count}"),
                });
            }
            if filled[edge] {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("edge {edge} labeled twice"),
                });
            }
            filled[edge] = true;
            labels[edge] = label;
        }
        if let Some(missing) = filled.iter().position(|&f| !f) {
            return Err(Error::LabelingMismatch(format!(
                "edge {missing} has no label"
            )));
        }
        EdgeLabeling::from_labels(labels, edge_count)
    }

    /// Renders the labeling file format, ending with a `# colors:` comment
    /// block that readers skip.
    pub fn render(&self, g: &Graph) -> Result<String> {
        let coloring = induced_colors(g, self)?;
        let mut out = String::new();
        for (edge, &label) in self.labels.iter().enumerate() {
            out.push_str(&format!("{edge} {label}\n"));
        }
        out.push_str("# colors:");
        for (v, &c) in coloring.colors().iter().enumerate() {
            out.push_str(&format!(" {v}={c}"));
        }
        out.push('\n');
        Ok(out)
    }
}

/// Induced vertex colors under a labeling, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedColoring {
    colors: Vec<u64>,
}

impl InducedColoring {
    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn color_of(&self, v: usize) -> u64 {
        self.colors[v]
    }

    pub fn distinct_count(&self) -> usize {
        let mut seen: Vec<u64> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Sums the labels incident to each vertex. Exact in u64 for the edge-count
/// cap enforced on file-driven paths.
pub fn induced_colors(g: &Graph, f: &EdgeLabeling) -> Result<InducedColoring> {
    f.check_against(g)?;
    // from_labels already guaranteed the bijection.
    let mut colors = vec![0u64; g.vertex_count()];
    for (edge, &(u, v)) in g.edges().iter().enumerate() {
        colors[u] += f.label_of(edge);
        colors[v] += f.label_of(edge);
    }
    let q = g.edge_count() as u64;
    debug_assert_eq!(colors.iter().sum::<u64>(), q * (q + 1));
    Ok(InducedColoring { colors })
}

/// True iff the induced colors differ across every edge.
pub fn is_local_antimagic(g: &Graph, f: &EdgeLabeling) -> Result<bool> {
    g.ensure_labelable()?;
    let coloring = induced_colors(g, f)?;
    Ok(g.edges()
        .iter()
        .all(|&(u, v)| coloring.color_of(u) != coloring.color_of(v)))
}

/// Number of distinct induced colors, c(f).
pub fn color_count(g: &Graph, f: &EdgeLabeling) -> Result<usize> {
    g.ensure_labelable()?;
    Ok(induced_colors(g, f)?.distinct_count())
}

/// One color class of a local antimagic labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClass {
    pub color: u64,
    /// Member vertices in ascending index order.
    pub members: Vec<usize>,
    pub has_pendant: bool,
}

/// The color classes of a local antimagic labeling, ordered the way the
/// profile orders them: classes containing a non-pendant vertex first by
/// ascending color (these are classes 1..r), then the pendant-only
/// singletons by ascending color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecomposition {
    pub classes: Vec<ColorClass>,
    pub r: usize,
    pub b: usize,
    pub edge_count: usize,
}

impl ClassDecomposition {
    pub fn t(&self) -> usize {
        self.classes.len()
    }

    pub fn profile(&self) -> ColorProfile {
        ColorProfile {
            t: self.classes.len(),
            r: self.r,
            b: self.b,
            e: self.edge_count as u64,
            class_sizes: self.classes.iter().map(|c| c.members.len() as u64).collect(),
            class_colors: self.classes.iter().map(|c| c.color).collect(),
            has_pendant: self.classes.iter().map(|c| c.has_pendant).collect(),
        }
    }
}

/// Groups vertices by induced color and orders the classes canonically.
/// Requires the labeling to be local antimagic.
pub fn extract_classes(g: &Graph, f: &EdgeLabeling) -> Result<ClassDecomposition> {
    if !is_local_antimagic(g, f)? {
        return Err(Error::NotLocalAntimagic);
    }
    let coloring = induced_colors(g, f)?;
    let pendants = g.pendant_vertices();

    let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        groups.entry(coloring.color_of(v)).or_default().push(v);
    }

    let mut front = Vec::new();
    let mut back = Vec::new();
    for (color, members) in groups {
        let has_pendant = members.iter().any(|&v| pendants.contains(v));
        let non_pendant = members.iter().any(|&v| !pendants.contains(v));
        let class = ColorClass {
            color,
            members,
            has_pendant,
        };
        if non_pendant {
            front.push(class);
        } else {
            // Pendant colors are distinct edge labels, so a pendant-only
            // class is always a singleton.
            assert_eq!(class.members.len(), 1, "pendant-only class must be a singleton");
            back.push(class);
        }
    }
    let r = front.len();
    let b = front.iter().filter(|c| c.has_pendant).count();
    front.extend(back);
    Ok(ClassDecomposition {
        classes: front,
        r,
        b,
        edge_count: g.edge_count(),
    })
}

/// The numeric (t, r, b, n_i, c_i, e) summary of a labeling's color classes.
///
/// Classes 1..r are exactly those containing a non-pendant vertex, sorted by
/// ascending color; classes r+1..t are pendant singletons, also ascending.
/// `b` counts the pendant vertices lying inside classes 1..r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorProfile {
    pub t: usize,
    pub r: usize,
    pub b: usize,
    pub e: u64,
    pub class_sizes: Vec<u64>,
    pub class_colors: Vec<u64>,
    pub has_pendant: Vec<bool>,
}

impl ColorProfile {
    /// 1-based class size n_i.
    pub fn size(&self, i: usize) -> u64 {
        self.class_sizes[i - 1]
    }

    /// 1-based class color c_i.
    pub fn color(&self, i: usize) -> u64 {
        self.class_colors[i - 1]
    }

    /// 1-based pendant flag for class i.
    pub fn class_has_pendant(&self, i: usize) -> bool {
        self.has_pendant[i - 1]
    }

    /// Pendant count of the underlying graph: t - r + b.
    pub fn pendant_count(&self) -> u64 {
        (self.t - self.r + self.b) as u64
    }

    /// Checks the structural invariants, including those that synthetic
    /// profiles entered by hand must obey.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidProfile(msg));
        if self.t < 2 {
            return fail(format!("t = {} but at least 2 colors are required", self.t));
        }
        if self.r < 1 || self.r > self.t {
            return fail(format!("r = {} outside 1..={}", self.r, self.t));
        }
        if self.e < 2 {
            return fail(format!("e = {} but at least 2 edges are required", self.e));
        }
        if self.class_sizes.len() != self.t
            || self.class_colors.len() != self.t
            || self.has_pendant.len() != self.t
        {
            return fail("class vectors must all have length t".into());
        }
        if self.class_sizes.contains(&0) {
            return fail("class sizes must be positive".into());
        }
        if self.class_colors.contains(&0) {
            return fail("class colors must be positive".into());
        }
        for w in self.class_colors[..self.r].windows(2) {
            if w[0] >= w[1] {
                return fail("colors c_1..c_r must be strictly increasing".into());
            }
        }
        for w in self.class_colors[self.r..].windows(2) {
            if w[0] >= w[1] {
                return fail("colors c_{r+1}..c_t must be strictly increasing".into());
            }
        }
        let mut all = self.class_colors.clone();
        all.sort_unstable();
        all.dedup();
        if all.len() != self.t {
            return fail("class colors must be pairwise distinct".into());
        }
        for i in self.r + 1..=self.t {
            if self.size(i) != 1 {
                return fail(format!("class {i} is past r and must be a singleton"));
            }
            if !self.class_has_pendant(i) {
                return fail(format!("class {i} is past r and must hold a pendant"));
            }
            if self.color(i) > self.e {
                return fail(format!(
                    "pendant class color c_{i} = {} exceeds e = {}",
                    self.color(i),
                    self.e
                ));
            }
        }
        // A pendant's color is its edge label, so any class holding one
        // stays within 1..=e.
        for i in 1..=self.r {
            if self.class_has_pendant(i) && self.color(i) > self.e {
                return fail(format!(
                    "class {i} holds a pendant but its color {} exceeds e = {}",
                    self.color(i),
                    self.e
                ));
            }
        }
        if self.b != self.has_pendant[..self.r].iter().filter(|&&p| p).count() {
            return fail("b must count the pendant-holding classes among 1..r".into());
        }
        // The max-label edge has a non-pendant endpoint whose color exceeds e.
        if self.color(self.r) <= self.e {
            return fail(format!(
                "c_r = {} must exceed e = {}",
                self.color(self.r),
                self.e
            ));
        }
        let weighted: Option<u64> = self
            .class_sizes
            .iter()
            .zip(&self.class_colors)
            .try_fold(0u64, |acc, (&n, &c)| acc.checked_add(n.checked_mul(c)?));
        match weighted {
            Some(sum) if sum == self.e * (self.e + 1) => Ok(()),
            Some(sum) => fail(format!(
                "sum of n_i * c_i is {sum}, expected e(e+1) = {}",
                self.e * (self.e + 1)
            )),
            None => Err(Error::Overflow("profile weighted color sum")),
        }
    }

    /// Expands the profile back into the color multiset it summarizes.
    pub fn color_multiset(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (&n, &c) in self.class_sizes.iter().zip(&self.class_colors) {
            out.extend(std::iter::repeat_n(c, n as usize));
        }
        out.sort_unstable();
        out
    }
}

/// Canonical profile of a local antimagic labeling.
pub fn extract_profile(g: &Graph, f: &EdgeLabeling) -> Result<ColorProfile> {
    Ok(extract_classes(g, f)?.profile())
}

/// Per-instance check of the pendant-edge observation: if the maximum label
/// sits on a non-pendant edge, then c(f) >= k + 2 for a graph with k
/// pendants. Vacuously true when the maximum label is on a pendant edge.
pub fn check_pendant_lemma(g: &Graph, f: &EdgeLabeling) -> Result<bool> {
    if !is_local_antimagic(g, f)? {
        return Err(Error::NotLocalAntimagic);
    }
    let max_edge = f.max_label_edge();
    if g.is_pendant_edge(max_edge) {
        return Ok(true);
    }
    let k = g.pendant_count();
    Ok(induced_colors(g, f)?.distinct_count() >= k + 2)
}
