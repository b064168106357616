//! Benchmark-only crate; see `benches/growth.rs`.
