//! Distance-preserving bijections of (F_q^n, d_pi) and their structure.
//!
//! Every symmetry factors uniquely as an admissible permutation of the
//! blocks composed with independent bijections inside each block. Two
//! representations are provided:
//!
//! * [`ExplicitMap`]: a full lookup table over the q^n vector indices.
//!   Construction does not require the table to be a bijection, so
//!   defective tables can be represented and then rejected by the checks.
//! * [`StructuredSymmetry`]: the pair (sigma, T) of an admissible block
//!   permutation and per-block bijection tables.
//!
//! Conventions, pinned by the test suite: sigma acts on vectors by
//! `(sigma . v)_j = v_{sigma^{-1}(j)}`, and a structured symmetry applies
//! T first and sigma second. Under these conventions conjugation satisfies
//! `sigma^{-1} T sigma = (T_{sigma(1)}, ..., T_{sigma(m)})` and the group
//! law reads `(sigma, T) * (phi, S) = (sigma phi, (phi^{-1} T phi) S)`.
//! A translation is blockwise a bijection, so maps that move the origin
//! need no separate representation: the translation part is absorbed into
//! the per-block tables.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::space::{BlockVector, Partition, PiSpace, MAX_ENUMERABLE_VECTORS};

/// A map F_q^n -> F_q^n as a full table over enumeration indices:
/// `table[i]` is the index of the image of vector i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplicitMap {
    space: PiSpace,
    table: Vec<u32>,
}

impl ExplicitMap {
    /// The table length must be exactly q^n (which must be enumerable);
    /// entries must be valid vector indices. Bijectivity is not required
    /// here - it is what [`ExplicitMap::is_symmetry`] reports on.
    pub fn new(space: PiSpace, table: Vec<u32>) -> Result<Self> {
        let total = space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
        if table.len() as u64 != total {
            return Err(Error::LengthMismatch {
                expected: total as usize,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&t| t as u64 >= total) {
            return Err(Error::EntryOutOfRange {
                index: bad as u64,
                bound: total,
            });
        }
        Ok(Self { space, table })
    }

    pub fn identity(space: PiSpace) -> Result<Self> {
        let total = space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
        Ok(Self {
            space,
            table: (0..total as u32).collect(),
        })
    }

    pub fn space(&self) -> &PiSpace {
        &self.space
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply_index(&self, i: u64) -> u64 {
        self.table[i as usize] as u64
    }

    pub fn apply(&self, v: &BlockVector) -> Result<BlockVector> {
        let i = self.space.vector_index(v)?;
        self.space.vector(self.apply_index(i))
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        for &t in &self.table {
            if seen[t as usize] {
                return false;
            }
            seen[t as usize] = true;
        }
        true
    }

    /// Table composition: `self` applied after `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space: self.space.clone(),
            table: other
                .table
                .iter()
                .map(|&t| self.table[t as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut table = vec![0u32; self.table.len()];
        for (i, &t) in self.table.iter().enumerate() {
            table[t as usize] = i as u32;
        }
        Ok(Self {
            space: self.space.clone(),
            table,
        })
    }

    /// First pair (u, v) of vector indices whose distance the map does not
    /// preserve, scanning pairs in lexicographic order; `None` means the
    /// map is a symmetry. Errors with `NotBijective` before looking at
    /// distances, so that failure mode is reported distinctly.
    pub fn symmetry_violation(&self) -> Result<Option<(u64, u64)>> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let total = self.table.len() as u64;
        for u in 0..total {
            for v in u + 1..total {
                let d = self.space.distance_of_indices(u, v);
                let di = self
                    .space
                    .distance_of_indices(self.apply_index(u), self.apply_index(v));
                if d != di {
                    return Ok(Some((u, v)));
                }
            }
        }
        Ok(None)
    }

    /// Exhaustive check that all pairwise distances are preserved.
    pub fn is_symmetry(&self) -> Result<bool> {
        Ok(self.symmetry_violation()?.is_none())
    }

    /// The admissible permutation induced by a symmetry: block i maps to
    /// the unique block j with `F(V_i) = F(0) + V_j`, where V_i is the set
    /// of vectors supported only in block i. Well-definedness is verified
    /// over every nonzero element of V_i.
    pub fn induced_permutation(&self) -> Result<Permutation> {
        if self.symmetry_violation()?.is_some() {
            return Err(Error::NotASymmetry);
        }
        self.induced_sigma_unchecked()
    }

    /// Sigma extraction without re-running the pairwise distance check.
    fn induced_sigma_unchecked(&self) -> Result<Permutation> {
        let partition = self.space.partition();
        let m = partition.block_count();
        let radices = self.space.block_radices();
        let suffix = suffix_products(&radices);
        let f0 = self.table[0] as u64;
        let mut images = Vec::with_capacity(m);
        for i in 0..m {
            let mut block_image = None;
            for b in 1..radices[i] {
                let v_idx = b * suffix[i];
                let w = self.table[v_idx as usize] as u64;
                let diff = self.space.sub_indices(w, f0);
                let digits = self.space.block_digits(diff, &radices);
                let mut nonzero = digits.iter().enumerate().filter(|(_, &d)| d != 0);
                let Some((j, _)) = nonzero.next() else {
                    return Err(Error::NotASymmetry);
                };
                if nonzero.next().is_some() {
                    return Err(Error::NotASymmetry);
                }
                match block_image {
                    None => block_image = Some(j),
                    Some(j0) if j0 != j => return Err(Error::NotASymmetry),
                    _ => {}
                }
            }
            let j = block_image.expect("every block has a nonzero element");
            if partition.blocks()[i] != partition.blocks()[j] {
                return Err(Error::NotASymmetry);
            }
            images.push(j);
        }
        Permutation::new(images).map_err(|_| Error::NotASymmetry)
    }

    /// Factor a symmetry as (sigma, T): sigma is the induced permutation
    /// and T = sigma^{-1} . F, read off blockwise by embedding each block
    /// value with zeros elsewhere. With `validate` on, every vector is
    /// checked to confirm each block of sigma^{-1} . F depends only on its
    /// own block; a violation means the input was not a symmetry.
    pub fn decompose(&self, validate: bool) -> Result<StructuredSymmetry> {
        if self.symmetry_violation()?.is_some() {
            return Err(Error::NotASymmetry);
        }
        let sigma = self.induced_sigma_unchecked()?;
        let partition = self.space.partition();
        let m = partition.block_count();
        let radices = self.space.block_radices();
        let suffix = suffix_products(&radices);

        // block digits of (sigma^{-1} . F)(v): block j comes from block
        // sigma(j) of F(v)
        let unpermuted = |v: u64| -> Vec<u32> {
            let wd = self
                .space
                .block_digits(self.table[v as usize] as u64, &radices);
            (0..m).map(|j| wd[sigma.image(j)]).collect()
        };

        let mut blocks = Vec::with_capacity(m);
        for i in 0..m {
            let mut t = Vec::with_capacity(radices[i] as usize);
            for b in 0..radices[i] {
                t.push(unpermuted(b * suffix[i])[i]);
            }
            blocks.push(BlockBijection::new(t).map_err(|_| Error::NotASymmetry)?);
        }

        if validate {
            let total = self.table.len() as u64;
            for v in 0..total {
                let vd = self.space.block_digits(v, &radices);
                let gd = unpermuted(v);
                for i in 0..m {
                    if gd[i] != blocks[i].apply(vd[i]) {
                        return Err(Error::SeparabilityViolation {
                            vector: v,
                            block: i,
                        });
                    }
                }
            }
        }

        StructuredSymmetry::new(self.space.clone(), sigma, blocks)
    }
}

fn suffix_products(radices: &[u64]) -> Vec<u64> {
    let mut suffix = vec![1u64; radices.len()];
    for i in (0..radices.len().saturating_sub(1)).rev() {
        suffix[i] = suffix[i + 1] * radices[i + 1];
    }
    suffix
}

/// A bijection of the q^k values of one block, as a lookup table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockBijection {
    table: Vec<u32>,
}

impl BlockBijection {
    /// The table must be a permutation of `0..table.len()`.
    pub fn new(table: Vec<u32>) -> Result<Self> {
        let len = table.len();
        let mut seen = vec![false; len];
        for &t in &table {
            if t as usize >= len || seen[t as usize] {
                return Err(Error::NotBijective);
            }
            seen[t as usize] = true;
        }
        Ok(Self { table })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            table: (0..size as u32).collect(),
        }
    }

    /// Number of block values q^k.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.table[v as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &t)| i as u32 == t)
    }

    pub fn inverse(&self) -> Self {
        let mut table = vec![0u32; self.table.len()];
        for (i, &t) in self.table.iter().enumerate() {
            table[t as usize] = i as u32;
        }
        Self { table }
    }

    /// `self` applied after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "block size mismatch");
        Self {
            table: other
                .table
                .iter()
                .map(|&t| self.table[t as usize])
                .collect(),
        }
    }
}

/// A symmetry in factored form: an admissible permutation `sigma` of the
/// block indices and per-block bijections `T = (T_1, ..., T_m)`. The map
/// sends v to w with `w_{sigma(i)} = T_i(v_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructuredSymmetry {
    space: PiSpace,
    sigma: Permutation,
    blocks: Vec<BlockBijection>,
}

impl StructuredSymmetry {
    pub fn new(space: PiSpace, sigma: Permutation, blocks: Vec<BlockBijection>) -> Result<Self> {
        space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
        let partition = space.partition();
        let m = partition.block_count();
        if sigma.degree() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: sigma.degree(),
            });
        }
        if !sigma.is_admissible(partition) {
            return Err(Error::NotAdmissible);
        }
        if blocks.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: blocks.len(),
            });
        }
        let radices = space.block_radices();
        for (i, b) in blocks.iter().enumerate() {
            if b.size() as u64 != radices[i] {
                return Err(Error::LengthMismatch {
                    expected: radices[i] as usize,
                    got: b.size(),
                });
            }
        }
        Ok(Self {
            space,
            sigma,
            blocks,
        })
    }

    pub fn identity(space: PiSpace) -> Result<Self> {
        space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
        let m = space.partition().block_count();
        let blocks = space
            .block_radices()
            .iter()
            .map(|&r| BlockBijection::identity(r as usize))
            .collect();
        Ok(Self {
            space,
            sigma: Permutation::identity(m),
            blocks,
        })
    }

    pub fn space(&self) -> &PiSpace {
        &self.space
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn block_maps(&self) -> &[BlockBijection] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.blocks.iter().all(BlockBijection::is_identity)
    }

    /// Image of a vector index: T blockwise, then sigma moving block i to
    /// slot sigma(i).
    pub fn apply_index(&self, v: u64) -> u64 {
        let radices = self.space.block_radices();
        let digits = self.space.block_digits(v, &radices);
        let mut out = vec![0u32; digits.len()];
        for (i, &d) in digits.iter().enumerate() {
            out[self.sigma.image(i)] = self.blocks[i].apply(d);
        }
        self.space.index_from_block_digits(&out, &radices)
    }

    pub fn apply(&self, v: &BlockVector) -> Result<BlockVector> {
        if v.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let i = self.space.vector_index(v)?;
        self.space.vector(self.apply_index(i))
    }

    /// Materialize the full lookup table. The result always passes
    /// [`ExplicitMap::is_symmetry`].
    pub fn expand(&self) -> Result<ExplicitMap> {
        let total = self.space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
        let radices = self.space.block_radices();
        let m = radices.len();
        let mut table = Vec::with_capacity(total as usize);
        let mut out = vec![0u32; m];
        for v in 0..total {
            let digits = self.space.block_digits(v, &radices);
            for (i, &d) in digits.iter().enumerate() {
                out[self.sigma.image(i)] = self.blocks[i].apply(d);
            }
            table.push(self.space.index_from_block_digits(&out, &radices) as u32);
        }
        ExplicitMap::new(self.space.clone(), table)
    }

    /// Group law: `(sigma, T) * (phi, S) = (sigma phi, (phi^{-1} T phi) S)`,
    /// so the result acts like `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let sigma = self.sigma.compose(&other.sigma);
        let blocks = other
            .blocks
            .iter()
            .enumerate()
            .map(|(i, s_i)| self.blocks[other.sigma.image(i)].compose(s_i))
            .collect();
        StructuredSymmetry::new(self.space.clone(), sigma, blocks)
    }

    /// Group inverse: `(sigma, T)^{-1} = (sigma^{-1}, (sigma T sigma^{-1})
    /// inverted blockwise)`.
    pub fn inverse(&self) -> Self {
        let sigma_inv = self.sigma.inverse();
        let blocks = (0..self.blocks.len())
            .map(|i| self.blocks[sigma_inv.image(i)].inverse())
            .collect();
        Self {
            space: self.space.clone(),
            sigma: sigma_inv,
            blocks,
        }
    }
}

/// Conjugation of a block-bijection tuple by an admissible permutation:
/// `sigma^{-1} T sigma = (T_{sigma(1)}, ..., T_{sigma(m)})`.
pub fn conjugate_by_permutation(
    blocks: &[BlockBijection],
    sigma: &Permutation,
    partition: &Partition,
) -> Result<Vec<BlockBijection>> {
    if blocks.len() != partition.block_count() || sigma.degree() != partition.block_count() {
        return Err(Error::LengthMismatch {
            expected: partition.block_count(),
            got: blocks.len().min(sigma.degree()),
        });
    }
    if !sigma.is_admissible(partition) {
        return Err(Error::NotAdmissible);
    }
    Ok((0..blocks.len())
        .map(|i| blocks[sigma.image(i)].clone())
        .collect())
}

fn shuffle<T>(items: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i);
        items.swap(i, j);
    }
}

/// A uniformly random symmetry in structured form, deterministic per seed:
/// a uniform admissible permutation (independent uniform permutation of
/// each size class) and independent uniform per-block bijection tables.
pub fn random_symmetry(space: &PiSpace, seed: u64) -> Result<StructuredSymmetry> {
    space.enumerable_count(MAX_ENUMERABLE_VECTORS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let partition = space.partition();
    let m = partition.block_count();

    let mut images: Vec<usize> = (0..m).collect();
    let mut class_start = 0;
    while class_start < m {
        let k = partition.blocks()[class_start];
        let mut class_end = class_start;
        while class_end < m && partition.blocks()[class_end] == k {
            class_end += 1;
        }
        shuffle(&mut images[class_start..class_end], &mut rng);
        class_start = class_end;
    }
    let sigma = Permutation::new(images).expect("shuffled identity is a permutation");

    let blocks = space
        .block_radices()
        .iter()
        .map(|&r| {
            let mut table: Vec<u32> = (0..r as u32).collect();
            shuffle(&mut table, &mut rng);
            BlockBijection::new(table).expect("shuffled identity is a bijection")
        })
        .collect();

    StructuredSymmetry::new(space.clone(), sigma, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use alloc::collections::BTreeSet;

    fn space(q: u64, blocks: &[usize]) -> PiSpace {
        PiSpace::new(
            FieldSpec::new(q).unwrap(),
            Partition::new(blocks.to_vec()).unwrap(),
        )
    }

    /// q=2, pi=(1,1): swaps (0,0) and (1,1), fixes the rest. A symmetry
    /// that moves the origin and permutes the blocks.
    fn antipodal_swap() -> ExplicitMap {
        ExplicitMap::new(space(2, &[1, 1]), vec![3, 1, 2, 0]).unwrap()
    }

    #[test]
    fn identity_is_a_symmetry() {
        let f = ExplicitMap::identity(space(2, &[2, 1])).unwrap();
        assert!(f.is_symmetry().unwrap());
    }

    #[test]
    fn non_bijective_reported_distinctly() {
        let f = ExplicitMap::new(space(2, &[1, 1]), vec![0, 0, 1, 2]).unwrap();
        assert_eq!(f.is_symmetry().unwrap_err(), Error::NotBijective);
    }

    #[test]
    fn pair_swap_breaks_a_distance() {
        // swaps (0,0) <-> (0,1), fixes (1,0) and (1,1)
        let f = ExplicitMap::new(space(2, &[1, 1]), vec![1, 0, 2, 3]).unwrap();
        assert!(!f.is_symmetry().unwrap());
        let (u, v) = f.symmetry_violation().unwrap().unwrap();
        let s = f.space().clone();
        assert_ne!(
            s.distance_of_indices(u, v),
            s.distance_of_indices(f.apply_index(u), f.apply_index(v))
        );
        // the pair ((0,0),(1,1)) is itself a witness: distance 2, images
        // (0,1) and (1,1) at distance 1
        assert_eq!(s.distance_of_indices(0, 3), 2);
        assert_eq!(s.distance_of_indices(f.apply_index(0), f.apply_index(3)), 1);
    }

    #[test]
    fn admissibility_examples() {
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert!(!swap.is_admissible(&Partition::new(vec![2, 1]).unwrap()));
        assert!(swap.is_admissible(&Partition::new(vec![1, 1]).unwrap()));
    }

    #[test]
    fn apply_structured_examples() {
        let s = space(2, &[1, 1]);
        let id = StructuredSymmetry::identity(s.clone()).unwrap();
        for i in 0..4 {
            assert_eq!(id.apply_index(i), i);
        }
        assert_eq!(
            id.expand().unwrap(),
            ExplicitMap::identity(s.clone()).unwrap()
        );

        let swap = Permutation::new(vec![1, 0]).unwrap();
        let coord_swap = StructuredSymmetry::new(
            s.clone(),
            swap.clone(),
            vec![BlockBijection::identity(2), BlockBijection::identity(2)],
        )
        .unwrap();
        // (0,1) -> (1,0)
        assert_eq!(coord_swap.apply_index(1), 2);

        let not = BlockBijection::new(vec![1, 0]).unwrap();
        let anti = StructuredSymmetry::new(s, swap, vec![not.clone(), not]).unwrap();
        // (0,0) -> (1,1)
        assert_eq!(anti.apply_index(0), 3);
        assert_eq!(anti.expand().unwrap(), antipodal_swap());
    }

    #[test]
    fn expanded_structured_maps_are_symmetries() {
        for (q, blocks) in [(2, &[1, 1][..]), (2, &[2, 1]), (3, &[1, 1])] {
            let s = space(q, blocks);
            for seed in 0..20 {
                let sym = random_symmetry(&s, seed).unwrap();
                assert!(sym.expand().unwrap().is_symmetry().unwrap());
            }
        }
    }

    #[test]
    fn induced_permutation_examples() {
        let s = space(2, &[1, 1]);
        let id = ExplicitMap::identity(s.clone()).unwrap();
        assert!(id.induced_permutation().unwrap().is_identity());

        // F(x,y) = (y,x)
        let f = ExplicitMap::new(s, vec![0, 2, 1, 3]).unwrap();
        assert_eq!(f.induced_permutation().unwrap().images(), &[1, 0]);

        // the origin-moving case: F(0) = (1,1), F(V_1) = (1,1) + V_2
        let g = antipodal_swap();
        assert_eq!(g.induced_permutation().unwrap().images(), &[1, 0]);
    }

    #[test]
    fn decompose_identity() {
        let f = ExplicitMap::identity(space(2, &[2, 1])).unwrap();
        assert!(f.decompose(true).unwrap().is_identity());
    }

    #[test]
    fn decompose_antipodal_swap() {
        let g = antipodal_swap();
        let s = g.decompose(true).unwrap();
        assert_eq!(s.sigma().images(), &[1, 0]);
        let not = BlockBijection::new(vec![1, 0]).unwrap();
        assert_eq!(s.block_maps(), &[not.clone(), not]);
        assert_eq!(s.expand().unwrap(), g);
    }

    #[test]
    fn decompose_rejects_non_symmetries() {
        let f = ExplicitMap::new(space(2, &[1, 1]), vec![1, 0, 2, 3]).unwrap();
        assert_eq!(f.decompose(true).unwrap_err(), Error::NotASymmetry);
    }

    #[test]
    fn round_trip_random_structured() {
        for (q, blocks) in [(2, &[1, 1][..]), (2, &[2, 1]), (3, &[2, 1]), (4, &[1, 1])] {
            let s = space(q, blocks);
            for seed in 0..10 {
                let sym = random_symmetry(&s, seed).unwrap();
                let back = sym.expand().unwrap().decompose(true).unwrap();
                assert_eq!(back, sym);
            }
        }
    }

    #[test]
    fn compose_matches_table_composition() {
        let s = space(2, &[2, 1]);
        for seed in 0..15 {
            let a = random_symmetry(&s, seed).unwrap();
            let b = random_symmetry(&s, seed + 1000).unwrap();
            let structured = a.compose(&b).unwrap().expand().unwrap();
            let tables = a.expand().unwrap().compose(&b.expand().unwrap()).unwrap();
            assert_eq!(structured, tables);
        }
    }

    #[test]
    fn compose_identity_and_inverse() {
        let s = space(3, &[1, 1]);
        let id = StructuredSymmetry::identity(s.clone()).unwrap();
        for seed in 0..10 {
            let a = random_symmetry(&s, seed).unwrap();
            assert_eq!(a.compose(&id).unwrap(), a);
            assert_eq!(id.compose(&a).unwrap(), a);
            assert!(a.compose(&a.inverse()).unwrap().is_identity());
            assert!(a.inverse().compose(&a).unwrap().is_identity());
        }
    }

    #[test]
    fn compose_specific_example() {
        // (swap, id) * (id, (not, id)) = (swap, (not, id))
        let s = space(2, &[1, 1]);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let not = BlockBijection::new(vec![1, 0]).unwrap();
        let id2 = BlockBijection::identity(2);
        let a = StructuredSymmetry::new(s.clone(), swap.clone(), vec![id2.clone(), id2.clone()])
            .unwrap();
        let b = StructuredSymmetry::new(
            s.clone(),
            Permutation::identity(2),
            vec![not.clone(), id2.clone()],
        )
        .unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.sigma().images(), &[1, 0]);
        assert_eq!(c.block_maps(), &[not, id2]);
        // oracle: table composition
        assert_eq!(
            c.expand().unwrap(),
            a.expand().unwrap().compose(&b.expand().unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_matches_table_inversion() {
        let s = space(2, &[2, 1]);
        for seed in 0..15 {
            let a = random_symmetry(&s, seed).unwrap();
            assert_eq!(
                a.inverse().expand().unwrap(),
                a.expand().unwrap().inverse().unwrap()
            );
        }
    }

    #[test]
    fn block_swap_is_an_involution() {
        let s = space(2, &[1, 1]);
        let swap_only = StructuredSymmetry::new(
            s,
            Permutation::new(vec![1, 0]).unwrap(),
            vec![BlockBijection::identity(2), BlockBijection::identity(2)],
        )
        .unwrap();
        assert_eq!(swap_only.inverse(), swap_only);
    }

    #[test]
    fn conjugation_formula_instantiated() {
        // pi=(1,1), sigma=swap, T=(not, id) -> (id, not)
        let p = Partition::new(vec![1, 1]).unwrap();
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let not = BlockBijection::new(vec![1, 0]).unwrap();
        let id2 = BlockBijection::identity(2);
        let conj = conjugate_by_permutation(&[not.clone(), id2.clone()], &swap, &p).unwrap();
        assert_eq!(conj, vec![id2, not]);
    }

    #[test]
    fn conjugation_matches_explicit_composition() {
        // expand(sigma^{-1} T sigma) == sigma_table^{-1} . T_table . sigma_table
        let s = space(2, &[1, 1, 1]);
        let p = s.partition().clone();
        let m = p.block_count();
        for seed in 0..20 {
            let t = {
                let mut sym = random_symmetry(&s, seed).unwrap();
                // keep only the block part
                sym = StructuredSymmetry::new(
                    s.clone(),
                    Permutation::identity(m),
                    sym.block_maps().to_vec(),
                )
                .unwrap();
                sym
            };
            for sigma in crate::perm::all_permutations(m) {
                if !sigma.is_admissible(&p) {
                    continue;
                }
                let conj = conjugate_by_permutation(t.block_maps(), &sigma, &p).unwrap();
                let conj_sym =
                    StructuredSymmetry::new(s.clone(), Permutation::identity(m), conj).unwrap();
                let sigma_sym = StructuredSymmetry::new(
                    s.clone(),
                    sigma.clone(),
                    vec![BlockBijection::identity(2); m],
                )
                .unwrap();
                let sigma_table = sigma_sym.expand().unwrap();
                let lhs = conj_sym.expand().unwrap();
                let rhs = sigma_table
                    .inverse()
                    .unwrap()
                    .compose(&t.expand().unwrap())
                    .unwrap()
                    .compose(&sigma_table)
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conjugation_rejects_inadmissible() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let blocks = [BlockBijection::identity(4), BlockBijection::identity(2)];
        assert_eq!(
            conjugate_by_permutation(&blocks, &swap, &p).unwrap_err(),
            Error::NotAdmissible
        );
    }

    #[test]
    fn random_symmetry_is_deterministic_per_seed() {
        let s = space(2, &[2, 1]);
        assert_eq!(
            random_symmetry(&s, 42).unwrap(),
            random_symmetry(&s, 42).unwrap()
        );
        assert_ne!(
            random_symmetry(&s, 42).unwrap(),
            random_symmetry(&s, 43).unwrap()
        );
    }

    #[test]
    fn random_symmetry_hits_the_whole_small_group() {
        // q=2, pi=(1,1): the group has 8 elements
        let s = space(2, &[1, 1]);
        let mut seen = BTreeSet::new();
        for seed in 0..1000 {
            let sym = random_symmetry(&s, seed).unwrap();
            seen.insert(sym.expand().unwrap().table().to_vec());
        }
        let group: BTreeSet<Vec<u32>> = crate::oracle::enumerate_symmetries(&s, true)
            .unwrap()
            .maps
            .unwrap()
            .iter()
            .map(|m| m.table().to_vec())
            .collect();
        assert_eq!(group.len(), 8);
        assert_eq!(seen, group);
    }

    #[test]
    fn structured_validation_errors() {
        let s = space(2, &[2, 1]);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let blocks = vec![BlockBijection::identity(4), BlockBijection::identity(2)];
        assert_eq!(
            StructuredSymmetry::new(s.clone(), swap, blocks.clone()).unwrap_err(),
            Error::NotAdmissible
        );
        let wrong = vec![BlockBijection::identity(2), BlockBijection::identity(2)];
        assert!(matches!(
            StructuredSymmetry::new(s.clone(), Permutation::identity(2), wrong).unwrap_err(),
            Error::LengthMismatch { .. }
        ));
        let one_block = vec![BlockBijection::identity(4)];
        assert!(matches!(
            StructuredSymmetry::new(s, Permutation::identity(2), one_block).unwrap_err(),
            Error::LengthMismatch { .. }
        ));
    }
}
