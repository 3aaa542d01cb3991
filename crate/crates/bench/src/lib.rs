//! Benchmark-only crate; see `benches/worm_steps.rs`.
