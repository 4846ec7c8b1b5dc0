//! Benchmarks for the translation pipeline; see `benches/pipeline.rs`.
