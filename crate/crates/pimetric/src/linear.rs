//! The linear layer: linearity tests on explicit maps, invertible block
//! matrices, and the factorization of every linear symmetry as an
//! admissible block permutation composed with one invertible matrix per
//! block.
//!
//! Matrix convention: vectors are columns and matrices act on the left, so
//! the matrix of a linear map has the images of the standard basis vectors
//! as its columns. For blocks of size 1 the matrices are just nonzero
//! scalars.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldElement, FieldSpec};
use crate::gauss;
use crate::perm::Permutation;
use crate::space::{BlockVector, PiSpace};
use crate::symmetry::{BlockBijection, ExplicitMap, StructuredSymmetry};

/// An invertible k x k matrix over GF(q), stored row-major as element
/// indices. Invertibility is checked at construction via the determinant,
/// computed by exact Gaussian elimination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMatrix {
    field: FieldSpec,
    k: usize,
    entries: Vec<u16>,
}

impl BlockMatrix {
    pub fn new(field: FieldSpec, k: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.iter().any(|e| e.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        Self::from_indices(field, k, entries.iter().map(FieldElement::index).collect())
    }

    pub fn from_indices(field: FieldSpec, k: usize, entries: Vec<u16>) -> Result<Self> {
        if k == 0 || entries.len() != k * k {
            return Err(Error::LengthMismatch {
                expected: k * k,
                got: entries.len(),
            });
        }
        let q = field.order();
        if let Some(&bad) = entries.iter().find(|&&e| e >= q) {
            return Err(Error::EntryOutOfRange {
                index: bad as u64,
                bound: q as u64,
            });
        }
        if gauss::determinant(&entries, k, &field) == 0 {
            return Err(Error::NotInvertible);
        }
        Ok(Self { field, k, entries })
    }

    pub fn identity(field: FieldSpec, k: usize) -> Self {
        let mut entries = vec![0u16; k * k];
        for i in 0..k {
            entries[i * k + i] = 1;
        }
        Self { field, k, entries }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn entry(&self, row: usize, col: usize) -> FieldElement {
        self.field
            .element(self.entries[row * self.k + col] as u64)
            .expect("stored entry is in range")
    }

    /// Row-major element indices.
    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn determinant(&self) -> FieldElement {
        self.field
            .element(gauss::determinant(&self.entries, self.k, &self.field) as u64)
            .expect("determinant is in range")
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(t, &e)| e == u16::from(t / self.k == t % self.k))
    }

    /// Matrix-vector product on raw coordinate indices (column convention).
    pub(crate) fn apply_coords(&self, coords: &[u16]) -> Vec<u16> {
        debug_assert_eq!(coords.len(), self.k);
        (0..self.k)
            .map(|r| {
                coords.iter().enumerate().fold(0u16, |acc, (c, &x)| {
                    self.field
                        .add_idx(acc, self.field.mul_idx(self.entries[r * self.k + c], x))
                })
            })
            .collect()
    }

    /// The bijection this matrix induces on the q^k block values.
    pub fn to_bijection(&self) -> BlockBijection {
        let q = self.field.order() as u64;
        let size = q.pow(self.k as u32);
        let mut table = Vec::with_capacity(size as usize);
        for v in 0..size {
            // big-endian digits, matching the block value encoding
            let mut coords = vec![0u16; self.k];
            let mut x = v;
            for c in coords.iter_mut().rev() {
                *c = (x % q) as u16;
                x /= q;
            }
            let image = self.apply_coords(&coords);
            let idx = image.iter().fold(0u64, |acc, &c| acc * q + c as u64);
            table.push(idx as u32);
        }
        BlockBijection::new(table).expect("an invertible matrix induces a bijection")
    }
}

/// A linear symmetry in factored form: an admissible permutation and one
/// invertible matrix per block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearBlockMap {
    space: PiSpace,
    sigma: Permutation,
    matrices: Vec<BlockMatrix>,
}

impl LinearBlockMap {
    pub fn new(space: PiSpace, sigma: Permutation, matrices: Vec<BlockMatrix>) -> Result<Self> {
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
        if matrices.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: matrices.len(),
            });
        }
        for (i, mat) in matrices.iter().enumerate() {
            if mat.field() != space.field() {
                return Err(Error::FieldMismatch);
            }
            if mat.size() != partition.blocks()[i] {
                return Err(Error::LengthMismatch {
                    expected: partition.blocks()[i],
                    got: mat.size(),
                });
            }
        }
        Ok(Self {
            space,
            sigma,
            matrices,
        })
    }

    pub fn identity(space: PiSpace) -> Self {
        let partition = space.partition().clone();
        let matrices = partition
            .blocks()
            .iter()
            .map(|&k| BlockMatrix::identity(space.field().clone(), k))
            .collect();
        Self {
            sigma: Permutation::identity(partition.block_count()),
            space,
            matrices,
        }
    }

    pub fn space(&self) -> &PiSpace {
        &self.space
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn matrices(&self) -> &[BlockMatrix] {
        &self.matrices
    }

    /// Apply block matrices, then move block i to slot sigma(i).
    pub fn apply(&self, v: &BlockVector) -> Result<BlockVector> {
        if v.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let partition = self.space.partition();
        let n = partition.dimension();
        let mut coords = vec![0u16; n];
        for (i, mat) in self.matrices.iter().enumerate() {
            let image = mat.apply_coords(v.block(i));
            let dest = partition.block_range(self.sigma.image(i));
            coords[dest].copy_from_slice(&image);
        }
        BlockVector::from_indices(self.space.clone(), coords)
    }

    /// The same map with each matrix replaced by its value table.
    pub fn to_structured(&self) -> Result<StructuredSymmetry> {
        let blocks = self
            .matrices
            .iter()
            .map(BlockMatrix::to_bijection)
            .collect();
        StructuredSymmetry::new(self.space.clone(), self.sigma.clone(), blocks)
    }

    pub fn expand(&self) -> Result<ExplicitMap> {
        self.to_structured()?.expand()
    }
}

/// Which linearity law an explicit map breaks first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinearityViolation {
    /// `F(u + v) != F(u) + F(v)` for the vector indices (u, v).
    Additivity(u64, u64),
    /// `F(c v) != c F(v)` for the scalar index and vector index (c, v).
    Homogeneity(u16, u64),
}

impl ExplicitMap {
    /// First broken linearity law in deterministic scan order, or `None`
    /// when the map is linear. Additivity is checked over all pairs and
    /// homogeneity over all scalars and vectors.
    pub fn linearity_violation(&self) -> Option<LinearityViolation> {
        let space = self.space();
        let total = self.table().len() as u64;
        for u in 0..total {
            for v in u..total {
                let sum = space.add_indices(u, v);
                let image_sum = space.add_indices(self.apply_index(u), self.apply_index(v));
                if self.apply_index(sum) != image_sum {
                    return Some(LinearityViolation::Additivity(u, v));
                }
            }
        }
        let q = space.field().order();
        for c in 0..q {
            for v in 0..total {
                let scaled = space.scale_index(c, v);
                if self.apply_index(scaled) != space.scale_index(c, self.apply_index(v)) {
                    return Some(LinearityViolation::Homogeneity(c, v));
                }
            }
        }
        None
    }

    /// `F(u+v) = F(u)+F(v)` and `F(cv) = cF(v)`, checked exhaustively.
    pub fn is_linear(&self) -> bool {
        self.linearity_violation().is_none()
    }

    /// A linear symmetry. Non-bijective tables are simply not
    /// automorphisms.
    pub fn is_automorphism(&self) -> bool {
        self.is_bijective() && self.is_symmetry().unwrap_or(false) && self.is_linear()
    }

    /// Factor a linear symmetry as (sigma, A_1, ..., A_m): sigma is the
    /// induced permutation and column j of A_i is block i of the image of
    /// the j-th standard basis vector of block i under sigma^{-1} . F.
    pub fn decompose_linear(&self) -> Result<LinearBlockMap> {
        if !self.is_automorphism() {
            return Err(Error::NotAnAutomorphism);
        }
        let structured = self.decompose(false)?;
        let space = self.space();
        let field = space.field().clone();
        let partition = space.partition();
        let q = field.order() as u64;
        let mut matrices = Vec::with_capacity(partition.block_count());
        for (i, block_map) in structured.block_maps().iter().enumerate() {
            let k = partition.blocks()[i];
            let mut entries = vec![0u16; k * k];
            for col in 0..k {
                // basis vector e_col as a block value (big-endian digits)
                let basis_value = q.pow((k - 1 - col) as u32);
                let image = block_map.apply(basis_value as u32) as u64;
                let mut x = image;
                for row in (0..k).rev() {
                    entries[row * k + col] = (x % q) as u16;
                    x /= q;
                }
            }
            matrices.push(
                BlockMatrix::from_indices(field.clone(), k, entries)
                    .map_err(|_| Error::NotAnAutomorphism)?,
            );
        }
        let result = LinearBlockMap::new(space.clone(), structured.sigma().clone(), matrices)?;
        debug_assert_eq!(&result.expand()?, self);
        Ok(result)
    }
}

/// |GL(k, q)| = (q^k - 1)(q^k - q) ... (q^k - q^{k-1}).
pub fn gl_order(k: usize, q: u64) -> Result<BigUint> {
    prime_power(q).ok_or(Error::NotPrimePower { q })?;
    if k == 0 {
        return Ok(BigUint::from(1u32));
    }
    let qk = BigUint::from(q).pow(k as u32);
    let mut acc = BigUint::from(1u32);
    let mut qj = BigUint::from(1u32);
    for _ in 0..k {
        acc *= &qk - &qj;
        qj *= q;
    }
    Ok(acc)
}

/// A uniformly random linear symmetry, deterministic per seed: a uniform
/// admissible permutation and one uniform element of GL(k_i, q) per block,
/// obtained by rejection sampling of random matrices.
pub fn random_automorphism(space: &PiSpace, seed: u64) -> Result<LinearBlockMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = space.field().clone();
    let partition = space.partition();
    let m = partition.block_count();
    let q = field.order();

    let mut images: Vec<usize> = (0..m).collect();
    let mut class_start = 0;
    while class_start < m {
        let k = partition.blocks()[class_start];
        let mut class_end = class_start;
        while class_end < m && partition.blocks()[class_end] == k {
            class_end += 1;
        }
        for i in (class_start + 1..class_end).rev() {
            let j = rng.gen_range(class_start..=i);
            images.swap(i, j);
        }
        class_start = class_end;
    }
    let sigma = Permutation::new(images).expect("shuffled identity is a permutation");

    let mut matrices = Vec::with_capacity(m);
    for &k in partition.blocks() {
        let mat = loop {
            let entries: Vec<u16> = (0..k * k).map(|_| rng.gen_range(0..q)).collect();
            match BlockMatrix::from_indices(field.clone(), k, entries) {
                Ok(mat) => break mat,
                Err(Error::NotInvertible) => continue,
                Err(e) => return Err(e),
            }
        };
        matrices.push(mat);
    }
    LinearBlockMap::new(space.clone(), sigma, matrices)
}
