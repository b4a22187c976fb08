//! Boolean realizers of finite posets.
//!
//! A Boolean realizer of a poset `P` is a family `B` of linear orders on the
//! ground set together with a truth function `τ` such that for every ordered
//! pair `(x, y)` of distinct elements, `x < y` in `P` exactly when `τ` maps
//! the bit string "is `x` before `y` in the i-th order?" to 1. The Boolean
//! dimension of `P` is the least size of such a family.
//!
//! This crate builds Boolean realizers compositionally:
//!
//! * [`components::build_component_realizer`] assembles a realizer for a
//!   disconnected poset from realizers of its components, using at most
//!   `2 + d + 4·2^d` orders when every component has one of size `d`.
//! * [`blocks::build_block_realizer`] assembles a realizer for a connected
//!   poset from realizers of its blocks (the maximal 2-connected pieces,
//!   bridges and isolated vertices of the cover graph), using at most
//!   `17 + d + 18·2^d` orders; [`blocks::build_general_realizer`] extends
//!   this to arbitrary posets at the cost of two extra orders.
//!
//! Everything constructed here is checked, not trusted: [`realizer::verify`]
//! replays a realizer against the poset over every ordered pair and reports
//! both wrong answers and bit-string collisions, and the [`oracles`] module
//! provides independent brute-force ground truth (exact Dushnik-Miller
//! dimension, alternating-cycle detection, tiny-instance exact Boolean
//! dimension).

#![forbid(unsafe_code)]
// All-pairs scans over dense element indices are the norm here; iterator
// rewrites of those loops obscure the arithmetic.
#![allow(clippy::needless_range_loop)]

pub mod blocks;
pub mod components;
pub mod decomp;
mod error;
pub mod gen;
pub mod oracles;
pub mod poset;
pub mod realizer;

pub use error::Error;
pub use poset::{Element, LinearOrder, Poset};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
