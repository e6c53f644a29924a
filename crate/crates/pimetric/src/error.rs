//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{q} is not a prime power")]
    NotPrimePower { q: u64 },
    #[error("field order {q} exceeds the supported maximum {max}")]
    FieldTooLarge { q: u64, max: u64 },
    #[error("index {index} out of range for a structure of size {bound}")]
    EntryOutOfRange { index: u64, bound: u64 },
    #[error("division by zero in a finite field")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("partition must contain at least one block")]
    EmptyPartition,
    #[error("partition blocks must be positive")]
    ZeroBlockSize,
    #[error("partition blocks must be in non-increasing order")]
    PartitionNotSorted,
    #[error("operands live in different spaces")]
    SpaceMismatch,
    #[error("space exceeds the enumeration cap of {cap} candidates")]
    SpaceTooLarge { cap: u64 },
    #[error("the code contains only the zero vector")]
    ZeroCode,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("image list is not a permutation")]
    InvalidPermutation,
    #[error("permutation does not preserve block sizes")]
    NotAdmissible,
    #[error("lookup table is not a bijection")]
    NotBijective,
    #[error("map does not preserve the block distance")]
    NotASymmetry,
    #[error("block {block} of the image of vector {vector} depends on other blocks")]
    SeparabilityViolation { vector: u64, block: usize },
    #[error("matrix is singular")]
    NotInvertible,
    #[error("map is not a linear symmetry")]
    NotAnAutomorphism,
    #[error("order computation exceeds the factorial cap (argument {value})")]
    OrderTooLarge { value: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
