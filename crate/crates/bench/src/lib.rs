//! Criterion benchmarks for `wreath-core`; see `benches/`.
