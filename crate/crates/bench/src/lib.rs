//! Benchmarks for `mipt-core`; see `benches/circuit.rs`. Run with
//! `cargo bench -p mipt-bench`.
