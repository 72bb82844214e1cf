//! Criterion benchmarks for `ehrhart-core`; see `benches/`.
