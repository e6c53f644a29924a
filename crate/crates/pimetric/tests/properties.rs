//! Property-based tests: structural invariants over randomly drawn small
//! spaces, seeds and vectors.

use proptest::prelude::*;

use pimetric::oracle::coset_property_holds;
use pimetric::{random_automorphism, random_symmetry, FieldSpec, Partition, PiSpace};

/// Every (q, partition) with q in {2,3,4,5}, q^n <= 64.
fn small_spaces() -> Vec<(u64, Vec<usize>)> {
    fn partitions_of(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(prefix.clone());
                return;
            }
            for k in (1..=max.min(n)).rev() {
                prefix.push(k);
                rec(n - k, k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let mut n = 1usize;
        while q.pow(n as u32) <= 64 {
            for p in partitions_of(n) {
                out.push((q, p));
            }
            n += 1;
        }
    }
    out
}

fn space_strategy() -> impl Strategy<Value = PiSpace> {
    prop::sample::select(small_spaces()).prop_map(|(q, blocks)| {
        PiSpace::new(FieldSpec::new(q).unwrap(), Partition::new(blocks).unwrap())
    })
}

proptest! {
    /// Factoring an expanded symmetry recovers exactly the structured form.
    #[test]
    fn decompose_inverts_expand(space in space_strategy(), seed in any::<u64>()) {
        let sym = random_symmetry(&space, seed).unwrap();
        let back = sym.expand().unwrap().decompose(true).unwrap();
        prop_assert_eq!(back, sym);
    }

    /// The structured group law agrees with lookup-table composition.
    #[test]
    fn compose_is_table_composition(space in space_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let sa = random_symmetry(&space, a).unwrap();
        let sb = random_symmetry(&space, b).unwrap();
        let structured = sa.compose(&sb).unwrap().expand().unwrap();
        let tables = sa.expand().unwrap().compose(&sb.expand().unwrap()).unwrap();
        prop_assert_eq!(structured, tables);
    }

    /// The structured inverse agrees with lookup-table inversion.
    #[test]
    fn inverse_is_table_inversion(space in space_strategy(), seed in any::<u64>()) {
        let sym = random_symmetry(&space, seed).unwrap();
        prop_assert!(sym.compose(&sym.inverse()).unwrap().is_identity());
        prop_assert_eq!(
            sym.inverse().expand().unwrap(),
            sym.expand().unwrap().inverse().unwrap()
        );
    }

    /// Expanded random symmetries preserve all distances, their induced
    /// permutation is admissible, and they satisfy the coset property.
    #[test]
    fn random_symmetries_verify(space in space_strategy(), seed in any::<u64>()) {
        let map = random_symmetry(&space, seed).unwrap().expand().unwrap();
        prop_assert!(map.is_symmetry().unwrap());
        prop_assert!(map.induced_permutation().unwrap().is_admissible(space.partition()));
        prop_assert!(coset_property_holds(&map));
    }

    /// Expanded random linear maps are automorphisms, fix the origin and
    /// round-trip through the matrix factorization.
    #[test]
    fn random_automorphisms_verify(space in space_strategy(), seed in any::<u64>()) {
        let lin = random_automorphism(&space, seed).unwrap();
        let map = lin.expand().unwrap();
        prop_assert_eq!(map.apply_index(0), 0);
        prop_assert!(map.is_automorphism());
        prop_assert_eq!(map.decompose_linear().unwrap(), lin);
    }

    /// Metric axioms and translation invariance at random sample points.
    #[test]
    fn metric_axioms_pointwise(
        space in space_strategy(),
        raw in prop::array::uniform3(any::<u64>()),
    ) {
        let total = space.vector_count().unwrap();
        let u = space.vector(raw[0] % total).unwrap();
        let v = space.vector(raw[1] % total).unwrap();
        let w = space.vector(raw[2] % total).unwrap();
        let m = space.partition().block_count();

        let duv = u.pi_distance(&v).unwrap();
        prop_assert!(duv <= m);
        prop_assert_eq!(duv, v.pi_distance(&u).unwrap());
        prop_assert_eq!(duv == 0, u == v);
        prop_assert_eq!(duv, u.sub(&v).unwrap().pi_weight());
        prop_assert!(u.pi_distance(&w).unwrap() <= duv + v.pi_distance(&w).unwrap());
        prop_assert_eq!(
            u.add(&w).unwrap().pi_distance(&v.add(&w).unwrap()).unwrap(),
            duv
        );
    }

    /// Seeded sampling is reproducible.
    #[test]
    fn seeded_draws_are_deterministic(space in space_strategy(), seed in any::<u64>()) {
        prop_assert_eq!(
            random_symmetry(&space, seed).unwrap(),
            random_symmetry(&space, seed).unwrap()
        );
        prop_assert_eq!(
            random_automorphism(&space, seed).unwrap(),
            random_automorphism(&space, seed).unwrap()
        );
    }
}
