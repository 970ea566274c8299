//! Spectral sets and tiles of finite cyclic groups `Z_N`, decided with exact
//! integer arithmetic.
//!
//! The crate is layered: [`ring`] holds the algebra (cyclotomic divisibility,
//! mask polynomials, zero sets), [`vanishing`] decomposes vanishing sums into
//! prime cycles, [`tiling`] and [`spectral`] decide and construct the two
//! properties, [`structure`] checks the finer structure of spectral sets in
//! `Z_{p^n q}`, and [`verify`] runs exhaustive searches over whole groups.

pub mod bits;
pub mod error;
pub mod ring;
pub mod spectral;
pub mod structure;
pub mod tiling;
pub mod vanishing;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{IntPoly, Modulus, ResidueMultiset, ResidueSet};
