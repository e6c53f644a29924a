//! IO companion for the `pimetric` crate: text formats for every domain
//! object and a parallel driver for the enumeration oracles. The `pimetric`
//! binary in this package exposes all of it on the command line.

pub mod format;
pub mod parallel;

pub use format::FormatError;
