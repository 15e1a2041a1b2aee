//! Criterion benchmarks for `kurosh-core`; see `benches/engine.rs`.
