//! Deterministic labeling generators: the two-leg spider family, the star
//! family, and pendant-edge augmentation of an existing local antimagic
//! labeling.
//!
//! Augmentation verifies local antimagicity of its output instead of
//! assuming it; callers outside the guaranteed parameter ranges get the
//! actual verdict.

use crate::error::{Error, Result};
use crate::graph::{build_spider, build_star, Graph, VertexSet};
use crate::labeling::{
    extract_classes, induced_colors, is_local_antimagic, ColorProfile, EdgeLabeling,
};

/// A generated (graph, labeling) pair together with its verified verdict.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub graph: Graph,
    pub labeling: EdgeLabeling,
    pub local_antimagic: bool,
    pub color_count: usize,
}

/// Parameters for attaching `s` pendant edges to every vertex of one color
/// class. The parity rule mirrors the bound theorems: a singleton class
/// accepts any s >= 1, a larger class needs even s >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AugmentSpec {
    /// 1-based class index into the profile ordering.
    pub class_index: usize,
    /// Pendant edges added per class member.
    pub s: u64,
}

impl AugmentSpec {
    pub fn validate(&self, profile: &ColorProfile) -> Result<()> {
        if self.class_index < 1 || self.class_index > profile.t {
            return Err(Error::ClassOutOfRange {
                index: self.class_index,
                max: profile.t,
            });
        }
        let n_i = profile.size(self.class_index);
        check_parity(self.s, n_i)
    }
}

pub(crate) fn check_parity(s: u64, class_size: u64) -> Result<()> {
    let ok = if class_size == 1 {
        s >= 1
    } else {
        s >= 2 && s.is_multiple_of(2)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ParityViolation { s, class_size })
    }
}

fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn add(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

/// Labels Sp(2^[n]), n >= 3: edge core-v_i gets label i, edge v_i-w_i gets
/// label 2n+1-i. Induced colors are n(n+1)/2 at the core, 2n+1 at every
/// middle vertex and 2n+1-i at the pendants, which yields n+2 distinct
/// colors for n >= 4 and 4 for n = 3, where the core color n(n+1)/2 = 6
/// re-uses a pendant color non-adjacently.
pub fn label_spider_2n(n: usize) -> Result<Constructed> {
    if n < 3 {
        return Err(Error::DegenerateFamily(format!(
            "two-leg spider labeling needs n >= 3, got {n}"
        )));
    }
    let graph = build_spider(&[(2, n)])?;
    let n64 = n as u64;
    let mut labels = Vec::with_capacity(2 * n);
    for i in 1..=n64 {
        labels.push(i);
        labels.push(2 * n64 + 1 - i);
    }
    let labeling = EdgeLabeling::from_labels(labels, graph.edge_count())?;
    finish(graph, labeling)
}

/// The identity labeling of K_{1,k}, k >= 2: leaf j is colored j and the
/// center is colored k(k+1)/2.
pub fn label_star(k: usize) -> Result<Constructed> {
    if k < 2 {
        return Err(Error::DegenerateFamily(format!(
            "star labeling needs k >= 2, got {k}"
        )));
    }
    let graph = build_star(k)?;
    let labeling = EdgeLabeling::identity(graph.edge_count());
    finish(graph, labeling)
}

/// Extends a local antimagic labeling of `g` onto G(V_i, s): old edges keep
/// their labels and the k-th pendant edge of the a-th class member (members
/// in ascending vertex order) gets label e + (k-1)n_i + a for odd k and
/// e + k n_i + 1 - a for even k. Every augmented vertex gains the same label
/// sum, e s + (s/2)(s n_i + 1) for even s and e s + s(s+1)/2 for odd s
/// (odd s only with a singleton class).
///
/// The output is verified, not trusted: the bound theorems guarantee local
/// antimagicity only under their magnitude conditions, and callers may
/// deliberately leave that regime.
pub fn augment_and_label(
    g: &Graph,
    f: &EdgeLabeling,
    class_index: usize,
    s: u64,
) -> Result<Constructed> {
    let decomposition = extract_classes(g, f)?;
    let t = decomposition.t();
    if class_index < 1 || class_index > t {
        return Err(Error::ClassOutOfRange {
            index: class_index,
            max: t,
        });
    }
    let class = &decomposition.classes[class_index - 1];
    let n_i = class.members.len() as u64;
    check_parity(s, n_i)?;

    let e = g.edge_count() as u64;
    let new_edges = mul(s, n_i, "new edge count")?;
    let top_label = add(e, new_edges, "maximum label")?;
    let s_usize = usize::try_from(s).map_err(|_| Error::Overflow("pendants per vertex"))?;

    let targets: VertexSet = class.members.iter().copied().collect();
    let graph = g.add_pendant_edges(&targets, s_usize)?;

    let mut labels = f.labels().to_vec();
    for a in 1..=n_i {
        for k in 1..=s {
            let label = if k % 2 == 1 {
                e + (k - 1) * n_i + a
            } else {
                e + k * n_i + 1 - a
            };
            labels.push(label);
        }
    }
    // from_labels checks the global bijection onto 1..=e+s*n_i; with the old
    // labels occupying 1..=e this pins the new ones to e+1..=e+s*n_i.
    let labeling = EdgeLabeling::from_labels(labels, graph.edge_count())?;
    debug_assert_eq!(
        labeling.labels()[g.edge_count()..].iter().max().copied(),
        Some(top_label)
    );

    let gained = if s.is_multiple_of(2) {
        add(
            mul(e, s, "label sum")?,
            mul(s / 2, add(mul(s, n_i, "label sum")?, 1, "label sum")?, "label sum")?,
            "label sum",
        )?
    } else {
        add(mul(e, s, "label sum")?, s * (s + 1) / 2, "label sum")?
    };
    let expected = add(class.color, gained, "augmented color")?;
    let coloring = induced_colors(&graph, &labeling)?;
    for &v in &class.members {
        assert_eq!(
            coloring.color_of(v),
            expected,
            "augmented vertex color must match the closed form"
        );
    }
    finish(graph, labeling)
}

/// Attaches `s` pendant edges to the star leaf colored i-1 and labels them
/// k+1..=k+s, lifting that leaf to color i-1 + ks + s(s+1)/2. The color
/// count is s+k exactly when the center color k(k+1)/2 is at most k+s, one
/// more when it is larger, and the output fails verification in the single
/// degenerate case where the lifted leaf collides with the center.
pub fn augment_star_leaf(k: usize, class_index: usize, s: u64) -> Result<Constructed> {
    if k < 2 {
        return Err(Error::DegenerateFamily(format!(
            "star augmentation needs k >= 2, got {k}"
        )));
    }
    if class_index < 2 || class_index > k + 1 {
        return Err(Error::ClassOutOfRange {
            index: class_index,
            max: k + 1,
        });
    }
    check_parity(s, 1)?;
    let base = label_star(k)?;
    let built = augment_and_label(&base.graph, &base.labeling, class_index, s)?;

    let k64 = k as u64;
    let center = k64 * (k64 + 1) / 2;
    let lifted = add(
        mul(k64, s, "lifted leaf color")?,
        (class_index as u64 - 1) + s * (s + 1) / 2,
        "lifted leaf color",
    )?;
    let expected_valid = lifted != center;
    assert_eq!(built.local_antimagic, expected_valid);
    if expected_valid {
        let expected_count = (k64 + s + u64::from(center > k64 + s)) as usize;
        assert_eq!(built.color_count, expected_count);
    }
    Ok(built)
}

fn finish(graph: Graph, labeling: EdgeLabeling) -> Result<Constructed> {
    let local_antimagic = is_local_antimagic(&graph, &labeling)?;
    let color_count = induced_colors(&graph, &labeling)?.distinct_count();
    Ok(Constructed {
        graph,
        labeling,
        local_antimagic,
        color_count,
    })
}
