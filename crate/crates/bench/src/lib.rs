//! Benchmark-only package; see the `benches/` targets.
