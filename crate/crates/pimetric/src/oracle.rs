//! Exhaustive ground truth for tiny spaces: enumerate every bijection (or
//! every matrix) and count the ones preserving the block distance. These
//! brute-force counts validate the closed-form orders and the structure
//! results; nothing here is derived from the formulas being checked.
//!
//! Candidate spaces are totally ordered, and every scan accepts a
//! contiguous rank range, so the work can be split across workers by range
//! with results merged in rank order. The outcome is identical for any
//! chunking, including a single full-range scan. The caps are fixed, not
//! configurable: bijection enumeration stops at q^n <= 9 (the next
//! prime-power size, 16, would mean 16! candidates) and matrix enumeration
//! at q^{n^2} <= 2^26.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;
use core::time::Duration;

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::space::{PiSpace, MAX_ENUMERABLE_VECTORS};
use crate::symmetry::{BlockBijection, ExplicitMap, StructuredSymmetry};

/// Bijection enumeration cap: q^n at most this.
pub const MAX_BIJECTION_SPACE: u64 = 9;
/// Matrix enumeration cap: q^{n^2} at most this.
pub const MAX_MATRIX_CANDIDATES: u64 = 1 << 26;
/// Block-tuple enumeration cap: the product of (q^{k_i})! at most this.
pub const MAX_BLOCK_TUPLE_CANDIDATES: u64 = 1_000_000;

/// What an [`EnumerationReport`] counted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumerationKind {
    /// All bijections of the vector set, filtered by distance preservation.
    Symmetries,
    /// All square matrices, filtered by invertibility and distance
    /// preservation.
    Automorphisms,
    /// All tuples of per-block bijections.
    BlockTuples,
}

/// Outcome of an exhaustive scan.
#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub space: PiSpace,
    pub kind: EnumerationKind,
    /// Total candidates examined.
    pub candidates: u64,
    /// How many passed the filter.
    pub count: u64,
    /// The surviving maps, when requested.
    pub maps: Option<Vec<ExplicitMap>>,
    /// Wall time, when a driver measured it (the scan itself does not).
    pub elapsed: Option<Duration>,
}

impl EnumerationReport {
    fn invariant_ok(&self) -> bool {
        self.count <= self.candidates
            && self
                .maps
                .as_ref()
                .is_none_or(|maps| maps.len() as u64 == self.count)
    }
}

/// Partial result of scanning one contiguous rank range.
#[derive(Clone, Debug)]
pub struct ScanChunk {
    pub count: u64,
    pub maps: Option<Vec<ExplicitMap>>,
}

/// Merge chunk results produced from consecutive ranges, in range order.
pub fn merge_chunks(
    space: &PiSpace,
    kind: EnumerationKind,
    candidates: u64,
    chunks: Vec<ScanChunk>,
) -> EnumerationReport {
    let mut count = 0;
    let mut maps = None;
    for chunk in chunks {
        count += chunk.count;
        match (maps.as_mut(), chunk.maps) {
            (None, Some(m)) => maps = Some(m),
            (Some(acc), Some(mut m)) => acc.append(&mut m),
            _ => {}
        }
    }
    let report = EnumerationReport {
        space: space.clone(),
        kind,
        candidates,
        count,
        maps,
        elapsed: None,
    };
    debug_assert!(report.invariant_ok());
    report
}

/// Distance lookup table for a small space: entry u * total + v.
fn distance_table(space: &PiSpace, total: u64) -> Vec<u8> {
    let total = total as usize;
    let mut dist = vec![0u8; total * total];
    for u in 0..total {
        for v in 0..total {
            dist[u * total + v] = space.distance_of_indices(u as u64, v as u64) as u8;
        }
    }
    dist
}

fn preserves_distances(table: &[u32], dist: &[u8], total: usize) -> bool {
    for u in 0..total {
        for v in u + 1..total {
            if dist[table[u] as usize * total + table[v] as usize] != dist[u * total + v] {
                return false;
            }
        }
    }
    true
}

/// Number of bijection candidates, (q^n)!, under the cap.
pub fn symmetry_candidates(space: &PiSpace) -> Result<u64> {
    let total = space.enumerable_count(MAX_BIJECTION_SPACE)?;
    Ok(perm::factorial_checked(total).expect("9! fits easily"))
}

/// Scan bijections with lexicographic ranks in `range`, counting the
/// distance-preserving ones.
pub fn scan_symmetries(space: &PiSpace, range: Range<u64>, keep_maps: bool) -> Result<ScanChunk> {
    let candidates = symmetry_candidates(space)?;
    assert!(range.end <= candidates, "range exceeds candidate count");
    let total = space.enumerable_count(MAX_BIJECTION_SPACE)? as usize;
    let dist = distance_table(space, total as u64);
    let mut table = perm::nth_permutation(total, range.start);
    let mut count = 0;
    let mut maps = keep_maps.then(Vec::new);
    let mut rank = range.start;
    while rank < range.end {
        if preserves_distances(&table, &dist, total) {
            count += 1;
            if let Some(maps) = maps.as_mut() {
                maps.push(ExplicitMap::new(space.clone(), table.clone())?);
            }
        }
        rank += 1;
        if rank < range.end {
            perm::next_permutation(&mut table);
        }
    }
    Ok(ScanChunk { count, maps })
}

/// Iterate all (q^n)! bijections in lexicographic order and count the
/// symmetries.
pub fn enumerate_symmetries(space: &PiSpace, keep_maps: bool) -> Result<EnumerationReport> {
    let candidates = symmetry_candidates(space)?;
    let chunk = scan_symmetries(space, 0..candidates, keep_maps)?;
    Ok(merge_chunks(
        space,
        EnumerationKind::Symmetries,
        candidates,
        vec![chunk],
    ))
}

/// Number of matrix candidates, q^{n^2}, under the cap.
pub fn automorphism_candidates(space: &PiSpace) -> Result<u64> {
    let q = space.field().order() as u64;
    let n = space.partition().dimension();
    let mut acc = 1u64;
    for _ in 0..n * n {
        acc = acc
            .checked_mul(q)
            .filter(|&a| a <= MAX_MATRIX_CANDIDATES)
            .ok_or(Error::SpaceTooLarge {
                cap: MAX_MATRIX_CANDIDATES,
            })?;
    }
    Ok(acc)
}

/// Scan n x n matrices with base-q codes in `range` (entries row-major,
/// first entry most significant), counting those that are invertible and
/// preserve all pairwise distances.
pub fn scan_automorphisms(
    space: &PiSpace,
    range: Range<u64>,
    keep_maps: bool,
) -> Result<ScanChunk> {
    let candidates = automorphism_candidates(space)?;
    assert!(range.end <= candidates, "range exceeds candidate count");
    let field = space.field().clone();
    let q = field.order();
    let n = space.partition().dimension();
    let total = space
        .vector_count()
        .expect("within the matrix cap, q^n fits") as usize;
    let dist = distance_table(space, total as u64);
    let coords: Vec<Vec<u16>> = (0..total as u64).map(|i| space.coords_of(i)).collect();

    // matrix entries as base-q digits of the rank, row-major
    let mut entries = vec![0u16; n * n];
    let mut x = range.start;
    for e in entries.iter_mut().rev() {
        *e = (x % q as u64) as u16;
        x /= q as u64;
    }

    let mut table = vec![0u32; total];
    let mut seen = vec![false; total];
    let mut count = 0;
    let mut maps = keep_maps.then(Vec::new);
    let mut rank = range.start;
    while rank < range.end {
        // build the lookup table of v -> A v, checking injectivity
        let mut bijective = true;
        for s in seen.iter_mut() {
            *s = false;
        }
        for (i, c) in coords.iter().enumerate() {
            let mut idx = 0u64;
            for r in 0..n {
                let mut acc = 0u16;
                for (&e, &x) in entries[r * n..(r + 1) * n].iter().zip(c) {
                    acc = field.add_idx(acc, field.mul_idx(e, x));
                }
                idx = idx * q as u64 + acc as u64;
            }
            if seen[idx as usize] {
                bijective = false;
                break;
            }
            seen[idx as usize] = true;
            table[i] = idx as u32;
        }
        if bijective && preserves_distances(&table, &dist, total) {
            count += 1;
            if let Some(maps) = maps.as_mut() {
                maps.push(ExplicitMap::new(space.clone(), table.clone())?);
            }
        }
        rank += 1;
        if rank < range.end {
            // increment the digit odometer
            for e in entries.iter_mut().rev() {
                *e += 1;
                if *e < q {
                    break;
                }
                *e = 0;
            }
        }
    }
    Ok(ScanChunk { count, maps })
}

/// Iterate all n x n matrices over GF(q) and count the linear symmetries.
pub fn enumerate_automorphisms(space: &PiSpace, keep_maps: bool) -> Result<EnumerationReport> {
    let candidates = automorphism_candidates(space)?;
    let chunk = scan_automorphisms(space, 0..candidates, keep_maps)?;
    Ok(merge_chunks(
        space,
        EnumerationKind::Automorphisms,
        candidates,
        vec![chunk],
    ))
}

fn block_tuple_radices(space: &PiSpace) -> Result<Vec<u64>> {
    space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
    let mut radices = Vec::new();
    let mut product = 1u64;
    for &r in &space.block_radices() {
        let f = perm::factorial_checked(r).ok_or(Error::SpaceTooLarge {
            cap: MAX_BLOCK_TUPLE_CANDIDATES,
        })?;
        product = product
            .checked_mul(f)
            .filter(|&p| p <= MAX_BLOCK_TUPLE_CANDIDATES)
            .ok_or(Error::SpaceTooLarge {
                cap: MAX_BLOCK_TUPLE_CANDIDATES,
            })?;
        radices.push(f);
    }
    Ok(radices)
}

/// Number of block-bijection tuples, the product of (q^{k_i})!, under the
/// cap.
pub fn block_tuple_candidates(space: &PiSpace) -> Result<u64> {
    Ok(block_tuple_radices(space)?.iter().product())
}

/// Scan tuples of per-block bijections with mixed-radix ranks in `range`
/// (block 0 most significant, each block bijection ranked
/// lexicographically). Every tuple is an element of the blockwise subgroup,
/// so the count always equals the range length; the point of the scan is
/// materializing the elements.
pub fn scan_block_tuples(space: &PiSpace, range: Range<u64>, keep_maps: bool) -> Result<ScanChunk> {
    let radices = block_tuple_radices(space)?;
    let candidates: u64 = radices.iter().product();
    assert!(range.end <= candidates, "range exceeds candidate count");
    let block_sizes = space.block_radices();
    let m = block_sizes.len();

    // per-block permutation tables at rank `range.start`
    let mut x = range.start;
    let mut tables: Vec<Vec<u32>> = vec![Vec::new(); m];
    for i in (0..m).rev() {
        let r = x % radices[i];
        x /= radices[i];
        tables[i] = perm::nth_permutation(block_sizes[i] as usize, r);
    }

    let mut count = 0;
    let mut maps = keep_maps.then(Vec::new);
    let mut rank = range.start;
    while rank < range.end {
        count += 1;
        if let Some(maps) = maps.as_mut() {
            let blocks: Vec<BlockBijection> = tables
                .iter()
                .map(|t| BlockBijection::new(t.clone()).expect("permutation table"))
                .collect();
            let sym = StructuredSymmetry::new(space.clone(), Permutation::identity(m), blocks)?;
            maps.push(sym.expand()?);
        }
        rank += 1;
        if rank < range.end {
            // odometer: advance the last block; on wrap, carry leftwards
            for t in tables.iter_mut().rev() {
                if perm::next_permutation(t) {
                    break;
                }
            }
        }
    }
    Ok(ScanChunk { count, maps })
}

/// Enumerate all tuples of per-block bijections (the blockwise subgroup).
pub fn enumerate_block_tuples(space: &PiSpace, keep_maps: bool) -> Result<EnumerationReport> {
    let candidates = block_tuple_candidates(space)?;
    let chunk = scan_block_tuples(space, 0..candidates, keep_maps)?;
    Ok(merge_chunks(
        space,
        EnumerationKind::BlockTuples,
        candidates,
        vec![chunk],
    ))
}

/// Does this map send every block-coset `v + V_i` onto a coset
/// `F(v) + V_j` with matching block size? Holds for every symmetry; a
/// violation certifies the map is not one.
pub fn coset_property_holds(map: &ExplicitMap) -> bool {
    let space = map.space();
    let partition = space.partition();
    let m = partition.block_count();
    let radices = space.block_radices();
    let mut suffix = vec![1u64; m];
    for i in (0..m.saturating_sub(1)).rev() {
        suffix[i] = suffix[i + 1] * radices[i + 1];
    }
    let total = map.table().len() as u64;
    for v in 0..total {
        let vd = space.block_digits(v, &radices);
        let fv = map.apply_index(v);
        for i in 0..m {
            // the coset v + V_i: replace block i by every other value
            let mut image_block = None;
            for b in 0..radices[i] {
                if b == vd[i] as u64 {
                    continue;
                }
                let mut digits = vd.clone();
                digits[i] = b as u32;
                let u = space.index_from_block_digits(&digits, &radices);
                let diff = space.sub_indices(map.apply_index(u), fv);
                let dd = space.block_digits(diff, &radices);
                let mut nonzero = dd.iter().enumerate().filter(|(_, &d)| d != 0);
                let Some((j, _)) = nonzero.next() else {
                    return false; // distinct points mapped to equal images
                };
                if nonzero.next().is_some() {
                    return false; // image difference spans two blocks
                }
                match image_block {
                    None => image_block = Some(j),
                    Some(j0) if j0 != j => return false,
                    _ => {}
                }
            }
            let j = image_block.expect("blocks have at least two values");
            if partition.blocks()[i] != partition.blocks()[j] {
                return false;
            }
        }
    }
    true
}

/// Check the coset property on every enumerated symmetry of the space.
pub fn verify_coset_property(space: &PiSpace) -> Result<bool> {
    let report = enumerate_symmetries(space, true)?;
    let maps = report.maps.expect("maps were requested");
    Ok(maps.iter().all(coset_property_holds))
}

/// All admissible permutations of the partition's blocks.
pub fn admissible_permutations(space: &PiSpace) -> Vec<Permutation> {
    let partition = space.partition();
    perm::all_permutations(partition.block_count())
        .into_iter()
        .filter(|p| p.is_admissible(partition))
        .collect()
}

/// Every tuple of per-block bijection tables, in mixed-radix rank order.
fn all_block_tuples(space: &PiSpace) -> Result<Vec<Vec<BlockBijection>>> {
    let radices = block_tuple_radices(space)?;
    let total: u64 = radices.iter().product();
    let block_sizes = space.block_radices();
    let mut tables: Vec<Vec<u32>> = block_sizes
        .iter()
        .map(|&s| (0..s as u32).collect())
        .collect();
    let mut out = Vec::with_capacity(total as usize);
    for rank in 0..total {
        out.push(
            tables
                .iter()
                .map(|t| BlockBijection::new(t.clone()).expect("permutation table"))
                .collect(),
        );
        if rank + 1 < total {
            for t in tables.iter_mut().rev() {
                if perm::next_permutation(t) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Does (sigma, T) -> table biject the structured pairs onto the
/// enumerated symmetries? Checks that distinct pairs expand to distinct
/// tables, that the expansions are exactly the enumerated symmetry set,
/// and that decomposing each expansion returns the original pair.
pub fn verify_decomposition_bijection(space: &PiSpace) -> Result<bool> {
    let enumerated = enumerate_symmetries(space, true)?;
    let mut enumerated_tables: Vec<Vec<u32>> = enumerated
        .maps
        .expect("maps were requested")
        .iter()
        .map(|m| m.table().to_vec())
        .collect();
    enumerated_tables.sort_unstable();

    let tuples = all_block_tuples(space)?;
    let mut expanded_tables = Vec::new();
    for sigma in admissible_permutations(space) {
        for blocks in tuples.iter().cloned() {
            let pair = StructuredSymmetry::new(space.clone(), sigma.clone(), blocks)?;
            let table = pair.expand()?;
            if table.decompose(true)? != pair {
                return Ok(false);
            }
            expanded_tables.push(table.table().to_vec());
        }
    }
    expanded_tables.sort_unstable();
    let distinct = expanded_tables.windows(2).all(|w| w[0] != w[1]);
    Ok(distinct && expanded_tables == enumerated_tables)
}
