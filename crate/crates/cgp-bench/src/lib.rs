//! Benchmark-only crate; see `benches/containment.rs`.
