//! Criterion benchmarks for the hot paths of the symbolic engine.
//! See `benches/engine_hot_paths.rs`.
