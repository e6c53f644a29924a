//! Block metrics on F_q^n and their symmetry groups.
//!
//! A partition pi = (k_1, ..., k_m) of n splits each vector of F_q^n into
//! m blocks; the block distance between two vectors counts the blocks
//! where they differ. This crate provides:
//!
//! * exact table-backed arithmetic in GF(q) for prime powers q <= 256
//!   ([`field`]);
//! * the metric space itself: partitions, block vectors, weight and
//!   distance, plus the minimum distance of a linear error-block code
//!   ([`space`]);
//! * the full isometry group: every distance-preserving bijection factors
//!   uniquely as an admissible block permutation composed with independent
//!   per-block bijections, giving a semidirect product structure
//!   ([`symmetry`]);
//! * the linear subgroup, where per-block bijections become invertible
//!   matrices ([`linear`]);
//! * closed-form group orders in exact integers ([`counting`]);
//! * exhaustive brute-force enumeration of tiny spaces to validate all of
//!   the above, chunkable for parallel drivers ([`oracle`]).
//!
//! The crate is no_std-compatible (`alloc` required): disable the default
//! `std` feature for embedded use. Wall-clock timing and parallel dispatch
//! live in the companion CLI crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod counting;
pub mod error;
pub mod field;
mod gauss;
pub mod linear;
pub mod oracle;
pub mod perm;
pub mod space;
pub mod symmetry;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, MAX_FIELD_ORDER};
pub use linear::{gl_order, random_automorphism, BlockMatrix, LinearBlockMap};
pub use perm::Permutation;
pub use space::{
    enumerate_vectors, BlockVector, GeneratorMatrix, Partition, PiSpace, SizeProfile,
    MAX_ENUMERABLE_VECTORS,
};
pub use symmetry::{
    conjugate_by_permutation, random_symmetry, BlockBijection, ExplicitMap, StructuredSymmetry,
};
