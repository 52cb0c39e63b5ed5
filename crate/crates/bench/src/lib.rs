//! Criterion benchmarks for the `cliffstar` crate live in `benches/`.
