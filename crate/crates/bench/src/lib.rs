//! Criterion benchmarks for the ring kernel live in `benches/`.
