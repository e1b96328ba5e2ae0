//! Benchmark-only package; see `benches/core.rs` for the measured paths:
//! Stirling table construction, partition sampling, score-equation solves,
//! and a single Monte Carlo experiment cell. Run with `cargo bench`.
