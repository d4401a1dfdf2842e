//! Criterion benchmarks for the fitters; see `benches/`.
