//! Criterion benchmarks for fracrelax; run with `cargo bench -p fracrelax-bench`.
