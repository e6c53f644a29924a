//! The metric space (F_q^n, d_pi): partitions, block vectors, block weight
//! and distance, vector enumeration, and a minimal linear error-block code
//! utility.
//!
//! A partition pi = (k_1, ..., k_m) splits the n coordinates into m
//! contiguous blocks. The block weight of a vector is the number of blocks
//! that are not identically zero, and the block distance of u, v is the
//! weight of u - v, equivalently the number of blocks where u and v differ.
//! With all blocks of size 1 this is the Hamming metric.
//!
//! Vectors are enumerated lexicographically by their coordinate index
//! sequence (last coordinate varies fastest), so the vector with index t
//! has coordinates equal to the base-q digits of t, most significant first.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::gauss;

/// Enumeration guard: operations materializing all q^n vectors (or tables
/// over them) refuse to run past this many.
pub const MAX_ENUMERABLE_VECTORS: u64 = 1 << 20;

/// A partition (k_1, ..., k_m) of n with k_1 >= ... >= k_m >= 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    blocks: Vec<usize>,
    starts: Vec<usize>,
}

impl Partition {
    /// Validates block sizes: nonempty, positive, non-increasing. Unsorted
    /// input is rejected rather than silently reordered, since block
    /// indices are meaningful everywhere downstream.
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if blocks.contains(&0) {
            return Err(Error::ZeroBlockSize);
        }
        if blocks.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::PartitionNotSorted);
        }
        let mut starts = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for &k in &blocks {
            starts.push(acc);
            acc += k;
        }
        Ok(Self { blocks, starts })
    }

    /// The all-ones partition of n, under which the block metric is the
    /// Hamming metric.
    pub fn hamming(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// n, the total number of coordinates.
    pub fn dimension(&self) -> usize {
        self.starts.last().unwrap() + self.blocks.last().unwrap()
    }

    /// m, the number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Coordinate range covered by block `i`.
    pub fn block_range(&self, i: usize) -> core::ops::Range<usize> {
        self.starts[i]..self.starts[i] + self.blocks[i]
    }

    /// Distinct block sizes with multiplicities, sizes strictly decreasing.
    pub fn size_profile(&self) -> SizeProfile {
        let mut entries: Vec<(usize, usize)> = Vec::new();
        for &k in &self.blocks {
            match entries.last_mut() {
                Some((size, mult)) if *size == k => *mult += 1,
                _ => entries.push((k, 1)),
            }
        }
        SizeProfile { entries }
    }
}

/// Distinct block sizes l_1 > ... > l_r of a partition together with their
/// multiplicities; the multiplicities sum to the block count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SizeProfile {
    entries: Vec<(usize, usize)>,
}

impl SizeProfile {
    /// (size, multiplicity) pairs, sizes strictly decreasing.
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }
}

/// A field together with a partition of the coordinates: the ambient space
/// every vector, map and symmetry in this crate lives in.
#[derive(Clone, PartialEq, Eq)]
pub struct PiSpace {
    field: FieldSpec,
    partition: Partition,
}

impl PiSpace {
    pub fn new(field: FieldSpec, partition: Partition) -> Self {
        Self { field, partition }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// q^n, if it fits in u64.
    pub fn vector_count(&self) -> Option<u64> {
        let q = self.field.order() as u128;
        let mut acc = 1u128;
        for _ in 0..self.partition.dimension() {
            acc = acc.checked_mul(q)?;
            if acc > u64::MAX as u128 {
                return None;
            }
        }
        Some(acc as u64)
    }

    /// q^n under a cap, or `SpaceTooLarge`.
    pub(crate) fn enumerable_count(&self, cap: u64) -> Result<u64> {
        match self.vector_count() {
            Some(total) if total <= cap => Ok(total),
            _ => Err(Error::SpaceTooLarge { cap }),
        }
    }

    /// The vector with the given enumeration index.
    pub fn vector(&self, index: u64) -> Result<BlockVector> {
        if let Some(total) = self.vector_count() {
            if index >= total {
                return Err(Error::EntryOutOfRange {
                    index,
                    bound: total,
                });
            }
        }
        Ok(BlockVector {
            space: self.clone(),
            coords: self.coords_of(index),
        })
    }

    /// Enumeration index of a vector of this space.
    pub fn vector_index(&self, v: &BlockVector) -> Result<u64> {
        if v.space != *self {
            return Err(Error::SpaceMismatch);
        }
        let q = self.field.order() as u128;
        let mut acc = 0u128;
        for &c in &v.coords {
            acc = acc * q + c as u128;
        }
        u64::try_from(acc).map_err(|_| Error::SpaceTooLarge { cap: u64::MAX })
    }

    pub(crate) fn coords_of(&self, mut index: u64) -> Vec<u16> {
        let n = self.partition.dimension();
        let q = self.field.order() as u64;
        let mut coords = vec![0u16; n];
        for c in coords.iter_mut().rev() {
            *c = (index % q) as u16;
            index /= q;
        }
        coords
    }

    /// q^{k_i} for each block, the per-block value radices.
    pub(crate) fn block_radices(&self) -> Vec<u64> {
        let q = self.field.order() as u64;
        self.partition
            .blocks()
            .iter()
            .map(|&k| q.pow(k as u32))
            .collect()
    }

    /// Split an enumeration index into per-block values (block 0 first).
    pub(crate) fn block_digits(&self, mut index: u64, radices: &[u64]) -> Vec<u32> {
        let mut digits = vec![0u32; radices.len()];
        for (d, &r) in digits.iter_mut().zip(radices).rev() {
            *d = (index % r) as u32;
            index /= r;
        }
        digits
    }

    /// Inverse of [`block_digits`].
    pub(crate) fn index_from_block_digits(&self, digits: &[u32], radices: &[u64]) -> u64 {
        digits
            .iter()
            .zip(radices)
            .fold(0u64, |acc, (&d, &r)| acc * r + d as u64)
    }

    /// Coordinatewise sum of two enumeration indices.
    pub(crate) fn add_indices(&self, a: u64, b: u64) -> u64 {
        let ca = self.coords_of(a);
        let cb = self.coords_of(b);
        let q = self.field.order() as u64;
        let mut acc = 0u64;
        for (&x, &y) in ca.iter().zip(&cb) {
            acc = acc * q + self.field.add_idx(x, y) as u64;
        }
        acc
    }

    /// Coordinatewise difference of two enumeration indices.
    pub(crate) fn sub_indices(&self, a: u64, b: u64) -> u64 {
        let ca = self.coords_of(a);
        let cb = self.coords_of(b);
        let q = self.field.order() as u64;
        let mut acc = 0u64;
        for (&x, &y) in ca.iter().zip(&cb) {
            acc = acc * q + self.field.sub_idx(x, y) as u64;
        }
        acc
    }

    /// Scalar multiple of an enumeration index by an element index.
    pub(crate) fn scale_index(&self, c: u16, a: u64) -> u64 {
        let ca = self.coords_of(a);
        let q = self.field.order() as u64;
        let mut acc = 0u64;
        for &x in &ca {
            acc = acc * q + self.field.mul_idx(c, x) as u64;
        }
        acc
    }

    /// Block distance between two enumeration indices.
    pub(crate) fn distance_of_indices(&self, a: u64, b: u64) -> usize {
        let ca = self.coords_of(a);
        let cb = self.coords_of(b);
        let mut d = 0;
        for i in 0..self.partition.block_count() {
            let r = self.partition.block_range(i);
            if ca[r.clone()] != cb[r] {
                d += 1;
            }
        }
        d
    }
}

impl core::fmt::Debug for PiSpace {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({:?})^pi={:?}", self.field, self.partition.blocks())
    }
}

/// A vector of F_q^n carrying its space, with coordinates stored as element
/// indices and grouped into blocks by the partition.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockVector {
    space: PiSpace,
    coords: Vec<u16>,
}

impl BlockVector {
    /// Build from field elements; they must all belong to the space's field.
    pub fn new(space: PiSpace, elements: Vec<FieldElement>) -> Result<Self> {
        let n = space.partition.dimension();
        if elements.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: elements.len(),
            });
        }
        if elements.iter().any(|e| e.field() != &space.field) {
            return Err(Error::FieldMismatch);
        }
        let coords = elements.iter().map(FieldElement::index).collect();
        Ok(Self { space, coords })
    }

    /// Build from raw element indices.
    pub fn from_indices(space: PiSpace, coords: Vec<u16>) -> Result<Self> {
        let n = space.partition.dimension();
        if coords.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: coords.len(),
            });
        }
        let q = space.field.order();
        if let Some(&bad) = coords.iter().find(|&&c| c >= q) {
            return Err(Error::EntryOutOfRange {
                index: bad as u64,
                bound: q as u64,
            });
        }
        Ok(Self { space, coords })
    }

    pub fn zero(space: PiSpace) -> Self {
        let n = space.partition.dimension();
        Self {
            space,
            coords: vec![0; n],
        }
    }

    pub fn space(&self) -> &PiSpace {
        &self.space
    }

    /// Raw element indices, all n coordinates.
    pub fn indices(&self) -> &[u16] {
        &self.coords
    }

    pub fn element(&self, i: usize) -> FieldElement {
        self.space
            .field
            .element(self.coords[i] as u64)
            .expect("stored coordinate is in range")
    }

    /// Raw indices of block `i`.
    pub fn block(&self, i: usize) -> &[u16] {
        &self.coords[self.space.partition.block_range(i)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Number of nonzero blocks.
    pub fn pi_weight(&self) -> usize {
        (0..self.space.partition.block_count())
            .filter(|&i| self.block(i).iter().any(|&c| c != 0))
            .count()
    }

    /// Number of blocks where `self` and `other` differ; equals the weight
    /// of their difference.
    pub fn pi_distance(&self, other: &Self) -> Result<usize> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok((0..self.space.partition.block_count())
            .filter(|&i| self.block(i) != other.block(i))
            .count())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u16, u16) -> u16) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            space: self.space.clone(),
            coords,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.space.field.add_idx(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.space.field.sub_idx(a, b))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.field() != &self.space.field {
            return Err(Error::FieldMismatch);
        }
        let ci = c.index();
        let coords = self
            .coords
            .iter()
            .map(|&a| self.space.field.mul_idx(ci, a))
            .collect();
        Ok(Self {
            space: self.space.clone(),
            coords,
        })
    }
}

impl core::fmt::Debug for BlockVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, &c) in self.coords.iter().enumerate() {
            if i > 0 {
                let boundary = self.space.partition.starts.contains(&i);
                f.write_str(if boundary { "|" } else { "," })?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All q^n vectors of the space in enumeration order. Guarded by
/// [`MAX_ENUMERABLE_VECTORS`].
pub fn enumerate_vectors(space: &PiSpace) -> Result<Vec<BlockVector>> {
    let total = space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
    (0..total).map(|i| space.vector(i)).collect()
}

/// A spanning set of row vectors for a linear error-block code.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    space: PiSpace,
    rows: Vec<BlockVector>,
}

impl GeneratorMatrix {
    /// Rows must be nonempty and share one space.
    pub fn new(rows: Vec<BlockVector>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        };
        let space = first.space.clone();
        if rows.iter().any(|r| r.space != space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { space, rows })
    }

    pub fn space(&self) -> &PiSpace {
        &self.space
    }

    pub fn rows(&self) -> &[BlockVector] {
        &self.rows
    }

    /// Minimum block weight over the nonzero codewords, by exhaustive
    /// enumeration of the row space (reduced to a basis first, so the
    /// guard is on q^rank).
    pub fn min_distance(&self) -> Result<usize> {
        let field = self.space.field.clone();
        let mut rows: Vec<Vec<u16>> = self.rows.iter().map(|r| r.coords.clone()).collect();
        let rank = gauss::row_echelon(&mut rows, &field);
        if rank == 0 {
            return Err(Error::ZeroCode);
        }
        let q = field.order() as u64;
        let mut count = 1u64;
        for _ in 0..rank {
            count = count
                .checked_mul(q)
                .filter(|&c| c <= MAX_ENUMERABLE_VECTORS)
                .ok_or(Error::SpaceTooLarge {
                    cap: MAX_ENUMERABLE_VECTORS,
                })?;
        }
        let basis = &rows[..rank];
        let n = self.space.partition.dimension();
        let mut best = usize::MAX;
        let mut coeffs = vec![0u16; rank];
        // odometer over all coefficient tuples, skipping the zero codeword
        'outer: loop {
            let mut pos = rank;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                coeffs[pos] += 1;
                if (coeffs[pos] as u64) < q {
                    break;
                }
                coeffs[pos] = 0;
            }
            let mut word = vec![0u16; n];
            for (c, row) in coeffs.iter().zip(basis) {
                if *c == 0 {
                    continue;
                }
                for (w, &r) in word.iter_mut().zip(row) {
                    *w = field.add_idx(*w, field.mul_idx(*c, r));
                }
            }
            let v = BlockVector {
                space: self.space.clone(),
                coords: word,
            };
            best = best.min(v.pi_weight());
            if best == 1 {
                break; // cannot get lower for a nonzero codeword
            }
        }
        Ok(best)
    }
}
