//! Benchmarks for the series oracles live under `benches/`.
