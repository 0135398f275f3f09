//! Criterion benchmarks for `gamma0-hecke`; see `benches/`.
