//! Computational toolkit for weak-commutativity groups `G(H,K;f)`.
//!
//! The crate is `no_std` (with `alloc`). It contains the algorithmic core:
//! permutations and stabilizer chains, Todd-Coxeter coset enumeration,
//! structure analysis of finite images, double-coset counting, the
//! combinatorics of bijections on elementary abelian groups, finite-field
//! substitution maps and exact polynomial matrices.
//!
//! File formats, caching, parallel sweeps and the command-line driver live in
//! the companion `wkc` crate.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod combinat;
pub mod doublecosets;
pub mod enumerator;
pub mod error;
pub mod field;
pub mod fieldlab;
pub mod perm;
pub mod polymat;
pub mod presentations;
pub mod regular;
pub mod structure;
pub mod util;

pub use error::{Error, Result};
