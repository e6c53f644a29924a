//! Permutations of `{0, ..., n-1}` in image-list form, plus the
//! lexicographic ranking machinery used by the enumeration oracles.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::space::Partition;

/// A permutation stored as its image list: `image(i) = images[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a permutation of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || seen[j] {
                return Err(Error::InvalidPermutation);
            }
            seen[j] = true;
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    /// Function composition: `(self.compose(other))(i) = self(other(i))`,
    /// i.e. `other` acts first. Degrees must match.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Self {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    /// A permutation of block indices is admissible when it only maps
    /// blocks onto blocks of the same size.
    pub fn is_admissible(&self, partition: &Partition) -> bool {
        if self.degree() != partition.block_count() {
            return false;
        }
        let k = partition.blocks();
        self.images.iter().enumerate().all(|(i, &j)| k[i] == k[j])
    }
}

/// n! if it fits in u64.
pub(crate) fn factorial_checked(n: u64) -> Option<u64> {
    let mut acc = 1u64;
    for i in 2..=n {
        acc = acc.checked_mul(i)?;
    }
    Some(acc)
}

/// The `rank`-th permutation of `0..n` in lexicographic order, decoded via
/// the factorial number system. `rank` must be below n!.
pub(crate) fn nth_permutation(n: usize, mut rank: u64) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for pos in 0..n {
        let f = factorial_checked((n - 1 - pos) as u64).expect("factorial fits");
        let d = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(d));
    }
    out
}

/// Advance to the lexicographic successor in place. Returns false (leaving
/// the array sorted ascending) when the input was the last permutation.
pub(crate) fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All permutations of degree `m`, lexicographic.
pub(crate) fn all_permutations(m: usize) -> Vec<Permutation> {
    let total = factorial_checked(m as u64).expect("degree too large");
    let mut cur: Vec<u32> = (0..m as u32).collect();
    let mut out = Vec::with_capacity(total as usize);
    loop {
        out.push(Permutation {
            images: cur.iter().map(|&x| x as usize).collect(),
        });
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}
