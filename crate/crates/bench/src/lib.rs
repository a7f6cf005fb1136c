//! Criterion benchmarks for the symopt transforms live under `benches/`.
