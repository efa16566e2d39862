//! Approximation schemes for SubsetSum and Partition that treat an exact
//! (min,+)-convolution engine as a black box.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`minconv`]: (min,+) and (max,+) convolution over sequences with
//!   undefined entries, the sentinel encoding for engines that only speak
//!   integers, and the packing of many instances into one engine call.
//! * [`approxset`]: the `(t, Δ)`-approximation algebra over sorted integer
//!   sets (checker, sparsification, shifting, union) and the approximate
//!   sumset built from one min- and one max-convolution.
//! * [`subsetsum`]: color coding, greedy, recursive splitting and witness
//!   reconstruction for the `Σ(Y) ≥ min{OPT, (1−ε)t}` scheme.
//! * [`partition`]: the deterministic Partition scheme (approximate bottom
//!   half, weak rounding, exact top half).
//! * [`hardness`]: Bellman's knapsack DP and the reduction from Knapsack to
//!   GapSubsetSum.
//! * [`testkit`]: brute-force oracles, instance generators and guarantee
//!   checks used by the test suites and the CLI.
//!
//! ```
//! use apxsum_core::{approximate_subset_sum, Epsilon, SubsetSumInstance};
//!
//! let inst = SubsetSumInstance::new(vec![2, 3, 5], 10).unwrap();
//! let res = approximate_subset_sum(&inst, Epsilon::new(1, 2).unwrap(), 7).unwrap();
//! assert_eq!(res.value, 10);
//! assert_eq!(res.witness.iter().sum::<u64>(), 10);
//! ```

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod approxset;
pub mod bruteforce;
mod error;
pub mod hardness;
pub mod instance;
pub mod minconv;
mod ntt;
pub mod partition;
mod rng;
pub mod sparse;
pub mod subsetsum;
pub mod testkit;

pub use error::{Error, Result};
pub use instance::{
    ApproxResult, Epsilon, KnapsackInstance, Mode, PartitionInstance, SubsetSumInstance, MAX_INPUT,
};
pub use minconv::{DenseEngine, ExtSeq, MinConvEngine, NaiveEngine};
pub use partition::approximate_partition;
pub use sparse::{Cap, SparseSet};
pub use subsetsum::{approximate_subset_sum, SchemeParams};
