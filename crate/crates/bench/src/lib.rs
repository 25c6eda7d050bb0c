//! Criterion benchmarks for rankit; see `benches/`.
