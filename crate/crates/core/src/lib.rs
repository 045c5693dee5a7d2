//! Core algorithms for extremal analysis of rainbow brooms: graph
//! representation with a canonical edge index, proper edge colorings,
//! rainbow-subgraph detectors and structural analyzers, algebraic coloring
//! generators, a certified exhaustive search engine, and an exact bounds
//! ledger.
//!
//! This crate is `no_std` (with `alloc`); everything in it is pure
//! computation. File formats, the CLI, wall-clock timing and parallel
//! drivers live in the companion `broomlab-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod coloring;
pub mod construct;
pub mod detect;
pub mod graph;
pub mod search;
mod util;

pub use util::SplitMix64;

/// Engine version tag embedded in search certificates.
pub const ENGINE_VERSION: &str = concat!("broomlab-core ", env!("CARGO_PKG_VERSION"));
