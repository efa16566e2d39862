//! File formats, the benchmark harness and the command-line front end for
//! [`apxsum_core`].

pub mod bench;
pub mod cli;
pub mod engine;
pub mod io;
pub mod thresholds;
pub mod verify;

pub use apxsum_core as core;
