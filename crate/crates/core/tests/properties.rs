use std::collections::BTreeSet;

use proptest::prelude::*;

use llab::homology::hochster_betti;
use llab::ideal::coletterplace_ideal;
use llab::linalg::Field;
use llab::poset::{all_posets, HomSpace, IsotoneMap, PosetIdeal};
use llab::resolution::{betti_table, coletterplace_resolution, verify_d_squared, verify_resolves};
use llab::sphere::{delta_j, delta_j_via_dual, restrict};
use llab::staircase::interval_decomposition;

fn ideal_strategy() -> impl Strategy<Value = PosetIdeal> {
    let posets: Vec<_> = (1..=3).flat_map(all_posets).collect();
    (0..posets.len(), 2u32..=3, prop::collection::vec(any::<prop::sample::Index>(), 1..4)).prop_map(
        move |(k, n, picks)| {
            let space = HomSpace::new(posets[k].clone(), n).unwrap();
            let maps = space.enumerate();
            let gens: Vec<IsotoneMap> = picks.iter().map(|i| maps[i.index(maps.len())].clone()).collect();
            PosetIdeal::generated_by(&space, &gens).unwrap()
        },
    )
}

fn gen_set(i: &llab::ideal::SqfMonomialIdeal) -> BTreeSet<llab::vars::SqfMonomial> {
    i.gens().iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution(j in ideal_strategy()) {
        let l = coletterplace_ideal(&j);
        let back = l.alexander_dual().unwrap().alexander_dual().unwrap();
        prop_assert_eq!(gen_set(&back), gen_set(&l));
        prop_assert_eq!(gen_set(&l.alexander_dual().unwrap()), gen_set(&l.alexander_dual_by_enumeration().unwrap()));
    }

    #[test]
    fn resolution_matches_hochster(j in ideal_strategy()) {
        let c = coletterplace_resolution(&j).unwrap();
        let l = coletterplace_ideal(&j);
        prop_assert!(verify_d_squared(&c));
        prop_assert!(verify_resolves(&c, &l, Field::Prime(3)));
        prop_assert_eq!(betti_table(&c).unwrap(), hochster_betti(&l, Field::Prime(3)).unwrap());
        let sizes: usize = interval_decomposition(&j).iter().map(|iv| iv.size()).sum();
        prop_assert_eq!(c.ranks().iter().sum::<usize>(), sizes);
    }

    #[test]
    fn delta_two_ways(j in ideal_strategy()) {
        let a: BTreeSet<_> = delta_j(&j).unwrap().facets().iter().copied().collect();
        let b: BTreeSet<_> = delta_j_via_dual(&j).unwrap().facets().iter().copied().collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn restriction_at_any_upper_bound(j in ideal_strategy(), bump in 0u32..2) {
        let n = j.n();
        let hull = j.hull().unwrap();
        let mu = IsotoneMap(hull.values().iter().map(|&v| (v + bump).min(n)).collect());
        let r = restrict(&j, &mu).unwrap();
        prop_assert!(r.cone_identity_holds(&j).unwrap());
        prop_assert!(r.dual_commutes(&j).unwrap());
    }
}
