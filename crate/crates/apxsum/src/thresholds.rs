//! Pass thresholds shared by `verify` and the acceptance suite. Randomized
//! checks compare an empirical success fraction against these; the
//! deterministic ones require every trial to pass.

/// SubsetSum completeness: `value ≥ min{OPT, (1−ε)t}`.
pub const SUBSETSUM_MIN_SUCCESS: f64 = 0.99;
/// Soundness of every scheme and the Partition guarantee are deterministic.
pub const DETERMINISTIC_SUCCESS: f64 = 1.0;
/// End-to-end Knapsack decisions through the randomized gap solver.
pub const KNAPSACK_MIN_AGREEMENT: f64 = 0.99;

/// Wall-clock budget for the convolution oracle suite.
pub const CONV_SUITE_MAX_SECS: f64 = 10.0;
/// Largest accepted runtime exponent (in `1/ε`) for Partition.
pub const PARTITION_MAX_EXPONENT: f64 = 1.8;
/// Partition must scale at least this much better than SubsetSum.
pub const MIN_EXPONENT_GAP: f64 = 0.3;
/// Wall-clock budget for both scaling sweeps together.
pub const BENCH_MAX_SECS: f64 = 600.0;
