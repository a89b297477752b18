//! Support library for the `qpluri` binary: JSON wire formats,
//! deterministic randomness, and the named verification suites.
//!
//! The binary itself is a thin argument-parsing shell; everything testable
//! lives here (and in `qpluri-core`).

pub mod json;
pub mod rng;
pub mod suites;
