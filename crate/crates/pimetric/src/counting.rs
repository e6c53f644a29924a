//! Closed-form orders of the symmetry and automorphism groups, from the
//! partition's size profile. All arithmetic is exact (arbitrary precision);
//! factorials of q^{k_i} overflow 64 bits as soon as q^{k_i} reaches 21.
//!
//! The admissible permutations form a direct product of symmetric groups,
//! one per size class, so their count is the product of the multiplicity
//! factorials - a product, not a sum; the exhaustive oracles distinguish
//! the two (e.g. q=2, pi=(2,1): the enumerated symmetry count is 48, which
//! is 1 * 48, not 2 * 48).

pub use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::linear::gl_order;
use crate::space::{Partition, SizeProfile};

/// Largest factorial argument accepted before reporting `OrderTooLarge`.
pub const MAX_FACTORIAL_ARG: u64 = 1 << 20;

fn factorial(n: u64) -> Result<BigUint> {
    if n > MAX_FACTORIAL_ARG {
        return Err(Error::OrderTooLarge { value: n });
    }
    let mut acc = BigUint::from(1u32);
    for i in 2..=n {
        acc *= i;
    }
    Ok(acc)
}

fn checked_q_pow(q: u64, k: usize) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = acc
            .checked_mul(q)
            .ok_or(Error::OrderTooLarge { value: u64::MAX })?;
    }
    Ok(acc)
}

/// Number of admissible permutations: the product of m_j! over the size
/// classes (size, multiplicity m_j) of the partition.
pub fn s_pi_order(profile: &SizeProfile) -> BigUint {
    profile
        .entries()
        .iter()
        .map(|&(_, mult)| factorial(mult as u64).expect("multiplicity is tiny"))
        .product()
}

/// Number of block-bijection tuples: the product of (q^{k_i})! over the
/// blocks.
pub fn block_maps_order(partition: &Partition, q: u64) -> Result<BigUint> {
    prime_power(q).ok_or(Error::NotPrimePower { q })?;
    let mut acc = BigUint::from(1u32);
    for &k in partition.blocks() {
        acc *= factorial(checked_q_pow(q, k)?)?;
    }
    Ok(acc)
}

/// Order of the full symmetry group: (product of m_j!) * (product of
/// (q^{k_i})!).
pub fn symm_order(partition: &Partition, q: u64) -> Result<BigUint> {
    Ok(s_pi_order(&partition.size_profile()) * block_maps_order(partition, q)?)
}

/// Order of the automorphism group: (product of m_j!) * (product of
/// |GL(k_i, q)|).
pub fn aut_order(partition: &Partition, q: u64) -> Result<BigUint> {
    prime_power(q).ok_or(Error::NotPrimePower { q })?;
    let mut acc = s_pi_order(&partition.size_profile());
    for &k in partition.blocks() {
        checked_q_pow(q, k)?;
        acc *= gl_order(k, q)?;
    }
    Ok(acc)
}

/// Orders of the symmetry and automorphism groups of the Hamming space:
/// (n! * (q!)^n, n! * (q-1)^n). Equals `symm_order`/`aut_order` on the
/// all-ones partition.
pub fn hamming_orders(n: usize, q: u64) -> Result<(BigUint, BigUint)> {
    prime_power(q).ok_or(Error::NotPrimePower { q })?;
    if n == 0 {
        return Err(Error::EmptyPartition);
    }
    let nf = factorial(n as u64)?;
    let symm = &nf * factorial(q)?.pow(n as u32);
    let aut = &nf * BigUint::from(q - 1).pow(n as u32);
    Ok((symm, aut))
}
