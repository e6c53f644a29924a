//! Exact arithmetic in GF(q) for small prime powers q.
//!
//! Fields are table-backed: addition, multiplication, negation and inversion
//! are precomputed at construction, so element operations are branch-free
//! lookups. Elements are encoded as indices in `[0, q)`; for q = p^e with
//! e > 1 the index is the base-p digit vector of the polynomial
//! representative (index = sum of c_i * p^i, where c_i is the coefficient
//! of x^i).
//!
//! The reduction polynomial for each (p, e) is pinned: the search takes the
//! monic degree-e polynomial whose non-leading coefficients, read as a
//! base-p integer, are minimal among irreducibles. This yields x^2+x+1 for
//! GF(4), x^3+x+1 for GF(8), x^2+1 for GF(9), x^4+x+1 for GF(16), and so
//! on, so element encodings are stable across runs and implementations.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 256;

/// Decompose q as p^e with p prime, if possible.
pub(crate) fn prime_power(q: u64) -> Option<(u16, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q as u16, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u16, e))
}

/// Remainder of `a` modulo the monic polynomial `g`, coefficients mod p.
/// Polynomials are coefficient vectors, index = degree.
fn poly_rem(mut a: Vec<u16>, g: &[u16], p: u16) -> Vec<u16> {
    let dg = g.len() - 1;
    while a.len() > dg {
        let lead = *a.last().unwrap();
        let da = a.len() - 1;
        if lead != 0 {
            // subtract lead * x^(da-dg) * g
            for (i, &gc) in g.iter().enumerate() {
                let pos = da - dg + i;
                let sub = (lead * gc) % p;
                a[pos] = (a[pos] + p - sub) % p;
            }
        }
        a.pop();
    }
    a
}

/// Irreducibility over GF(p) of a monic polynomial of degree >= 2, by trial
/// division: f is reducible iff it has a monic divisor of degree in [1, deg/2].
fn poly_is_irreducible(f: &[u16], p: u16) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u16; d + 1];
            let mut c = code;
            for coeff in g.iter_mut().take(d) {
                *coeff = (c % p as u64) as u16;
                c /= p as u64;
            }
            g[d] = 1;
            if poly_rem(f.to_vec(), &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// The pinned monic irreducible of degree e over GF(p): minimal non-leading
/// coefficients in base-p encoding.
fn find_reduction_poly(p: u16, e: u32) -> Vec<u16> {
    let count = (p as u64).pow(e);
    for code in 0..count {
        let mut f = vec![0u16; e as usize + 1];
        let mut c = code;
        for coeff in f.iter_mut().take(e as usize) {
            *coeff = (c % p as u64) as u16;
            c /= p as u64;
        }
        f[e as usize] = 1;
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of degree {e} exists over GF({p})")
}

#[derive(Debug)]
struct FieldRepr {
    p: u16,
    e: u32,
    q: u16,
    /// Coefficients of the reduction polynomial, index = degree. Empty when e = 1.
    reduction_poly: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// The finite field GF(q), q = p^e, with precomputed operation tables.
///
/// Cloning is cheap (shared representation). Two specs compare equal when
/// they have the same characteristic, degree and reduction polynomial.
#[derive(Clone)]
pub struct FieldSpec {
    repr: Arc<FieldRepr>,
}

impl FieldSpec {
    /// Build the field of order q (2 <= q <= 256).
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge {
                q,
                max: MAX_FIELD_ORDER,
            });
        }
        let q = q as u16;
        let reduction_poly = if e == 1 {
            Vec::new()
        } else {
            find_reduction_poly(p, e)
        };

        let qu = q as usize;
        let mut add = vec![0u16; qu * qu];
        let mut mul = vec![0u16; qu * qu];
        let mut neg = vec![0u16; qu];
        let mut inv = vec![0u16; qu];

        if e == 1 {
            for a in 0..q {
                neg[a as usize] = (q - a) % q;
                for b in 0..q {
                    add[a as usize * qu + b as usize] = (a + b) % q;
                    mul[a as usize * qu + b as usize] = (a as u32 * b as u32 % q as u32) as u16;
                }
            }
        } else {
            let digits = |mut x: u16| -> Vec<u16> {
                let mut d = vec![0u16; e as usize];
                for di in d.iter_mut() {
                    *di = x % p;
                    x /= p;
                }
                d
            };
            let undigits = |d: &[u16]| -> u16 {
                let mut x = 0u16;
                for &di in d.iter().rev() {
                    x = x * p + di;
                }
                x
            };
            for a in 0..q {
                let da = digits(a);
                let dn: Vec<u16> = da.iter().map(|&c| (p - c) % p).collect();
                neg[a as usize] = undigits(&dn);
                for b in 0..q {
                    let db = digits(b);
                    let ds: Vec<u16> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                    add[a as usize * qu + b as usize] = undigits(&ds);
                    // convolution, then reduction
                    let mut prod = vec![0u16; 2 * e as usize - 1];
                    for (i, &x) in da.iter().enumerate() {
                        for (j, &y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    let mut rem = poly_rem(prod, &reduction_poly, p);
                    rem.resize(e as usize, 0);
                    mul[a as usize * qu + b as usize] = undigits(&rem);
                }
            }
        }
        for a in 1..q {
            for b in 1..q {
                if mul[a as usize * qu + b as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }

        Ok(Self {
            repr: Arc::new(FieldRepr {
                p,
                e,
                q,
                reduction_poly,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    /// Number of elements q.
    pub fn order(&self) -> u16 {
        self.repr.q
    }

    /// Prime characteristic p.
    pub fn characteristic(&self) -> u16 {
        self.repr.p
    }

    /// Extension degree e (q = p^e).
    pub fn degree(&self) -> u32 {
        self.repr.e
    }

    /// Coefficients (index = degree) of the pinned reduction polynomial.
    /// Empty for prime fields.
    pub fn reduction_poly(&self) -> &[u16] {
        &self.repr.reduction_poly
    }

    /// The element with the given index.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.repr.q as u64 {
            return Err(Error::EntryOutOfRange {
                index,
                bound: self.repr.q as u64,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            index: index as u16,
        })
    }

    /// Additive identity.
    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 0,
        }
    }

    /// Multiplicative identity.
    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 1,
        }
    }

    /// All q elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.repr.q).map(move |i| FieldElement {
            field: self.clone(),
            index: i,
        })
    }

    pub(crate) fn add_idx(&self, a: u16, b: u16) -> u16 {
        self.repr.add[a as usize * self.repr.q as usize + b as usize]
    }

    pub(crate) fn mul_idx(&self, a: u16, b: u16) -> u16 {
        self.repr.mul[a as usize * self.repr.q as usize + b as usize]
    }

    pub(crate) fn neg_idx(&self, a: u16) -> u16 {
        self.repr.neg[a as usize]
    }

    pub(crate) fn sub_idx(&self, a: u16, b: u16) -> u16 {
        self.add_idx(a, self.neg_idx(b))
    }

    /// Index of the inverse; caller must exclude zero.
    pub(crate) fn inv_idx(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.repr.inv[a as usize]
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr)
            || (self.repr.p == other.repr.p
                && self.repr.e == other.repr.e
                && self.repr.reduction_poly == other.repr.reduction_poly)
    }
}

impl Eq for FieldSpec {}

impl core::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GF({})", self.repr.q)
    }
}

/// An element of a specific [`FieldSpec`], stored as its index.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    index: u16,
}

impl FieldElement {
    pub fn index(&self) -> u16 {
        self.index
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn check_field(&self, rhs: &Self) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        Ok(Self {
            field: self.field.clone(),
            index: self.field.add_idx(self.index, rhs.index),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        Ok(Self {
            field: self.field.clone(),
            index: self.field.mul_idx(self.index, rhs.index),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            index: self.field.neg_idx(self.index),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.index == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            field: self.field.clone(),
            index: self.field.inv_idx(self.index),
        })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl core::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.index)
    }
}

impl core::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.index)
    }
}
