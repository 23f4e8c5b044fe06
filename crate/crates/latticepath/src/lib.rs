//! Files, sampling, verification suites and the command line around
//! [`latticepath_core`].
//!
//! - [`cache`]: on-disk tables keyed by level, budget and format version.
//! - [`sample`]: seeded ChaCha8 corpora.
//! - [`verify`]: sweeps that report counterexamples instead of panicking.
//! - [`report`] and [`cli`]: the `latticepath` binary.

pub mod cache;
pub mod cli;
pub mod report;
pub mod sample;
pub mod verify;

pub use latticepath_core as core;
