//! Benchmarks for `kunz-core`; see `benches/`.
