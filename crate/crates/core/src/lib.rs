//! Exact tools for local antimagic edge labelings.
//!
//! A labeling of a connected graph assigns the numbers 1..q bijectively to
//! its q edges; the induced color of a vertex is the sum of its incident
//! labels, and the labeling is local antimagic when adjacent vertices always
//! receive distinct colors. The smallest achievable number of distinct
//! colors is the local antimagic chromatic number of the graph.
//!
//! The crate verifies labelings, extracts their color profiles, generates
//! the closed-form labelings for spider, star and pendant-augmented
//! families, computes the chromatic number exactly on small graphs by
//! sharded exhaustive search, and cross-checks bound predictions against
//! constructions and search.

pub mod constructions;
pub mod error;
pub mod graph;
pub mod harness;
pub mod labeling;
pub mod solver;

pub use constructions::{
    augment_and_label, augment_star_leaf, label_spider_2n, label_star, AugmentSpec, Constructed,
};
pub use error::{Error, Result};
pub use graph::{
    build_cycle, build_path, build_spider, build_star, build_wheel, chromatic_number_exact, Graph,
    VertexSet, DEFAULT_VERTEX_LIMIT, MAX_EDGES,
};
pub use harness::{
    predict_auto, predict_nonpendant_class, predict_optimal_base, predict_pendant_class,
    run_experiment, BoundCase, ExperimentReport, PredictedBounds,
};
pub use labeling::{
    check_pendant_lemma, color_count, extract_classes, extract_profile, induced_colors,
    is_local_antimagic, ClassDecomposition, ColorClass, ColorProfile, EdgeLabeling,
    InducedColoring,
};
pub use solver::{
    certify, chi_la_lower_bound, find_labeling_with_profile, solve_chi_la, CertifyOutcome,
    SolveMethod, SolveOptions, SolverResult, DEFAULT_EDGE_LIMIT, HARD_EDGE_LIMIT,
};
