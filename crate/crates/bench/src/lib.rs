//! Criterion benchmarks for the workbench live in `benches/`.
