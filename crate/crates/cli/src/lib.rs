//! Command-line front end for `dualmetric`: session configs, a small
//! expression language, the randomized identity suite and micro-benchmarks.

pub mod bench;
pub mod config;
pub mod eval;
pub mod expr;
pub mod suite;
