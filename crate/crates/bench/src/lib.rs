//! Benchmarks for `qrsl-core`; see `benches/`.
