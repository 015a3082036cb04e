use std::sync::OnceLock;

use dpl_core::arithmetic::{off_ramification_lower_bound, PrimePower, SqrtBound};
use dpl_core::classes::ClassCatalog;
use dpl_core::configuration::{orbit_fingerprint, registry_entries, Configuration};
use dpl_core::curves::{reduce_in_order, reduce_to_minus1};
use dpl_core::lattice::{DivisorClass, SurfaceLattice};
use dpl_core::weyl::{simple_roots, E7Action};
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

fn catalog() -> &'static ClassCatalog {
    static CAT: OnceLock<ClassCatalog> = OnceLock::new();
    CAT.get_or_init(ClassCatalog::degree_two)
}

fn action() -> &'static E7Action {
    static A: OnceLock<E7Action> = OnceLock::new();
    A.get_or_init(|| E7Action::new(catalog()).unwrap())
}

fn class(rank: usize) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(-8i64..=8, rank + 1).prop_map(DivisorClass::new)
}

fn root() -> impl Strategy<Value = DivisorClass> {
    select(catalog().roots().to_vec())
}

fn representative() -> impl Strategy<Value = Configuration> {
    (0..registry_entries().len()).prop_map(|i| registry_entries()[i].configuration(catalog()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn intersection_is_symmetric_and_bilinear(
        (rank, a, b, c) in (0usize..=8).prop_flat_map(|r| (Just(r), class(r), class(r), class(r)))
    ) {
        let lat = SurfaceLattice::new(rank).unwrap();
        prop_assert_eq!(lat.intersect(&a, &b).unwrap(), lat.intersect(&b, &a).unwrap());
        prop_assert_eq!(lat.intersect(&(&a + &b), &c).unwrap(), lat.intersect(&a, &c).unwrap() + lat.intersect(&b, &c).unwrap());
        prop_assert_eq!(lat.intersect(&a.scale(3), &c).unwrap(), 3 * lat.intersect(&a, &c).unwrap());
        let k = lat.canonical_class();
        prop_assert_eq!(lat.intersect(&k, &k).unwrap(), lat.degree());
    }

    #[test]
    fn reflection_is_an_isometric_involution(x in class(7), y in class(7), r in root()) {
        let lat = SurfaceLattice::degree_two();
        let sx = lat.reflect(&x, &r).unwrap();
        let sy = lat.reflect(&y, &r).unwrap();
        prop_assert_eq!(lat.reflect(&sx, &r).unwrap(), x.clone());
        prop_assert_eq!(sx.dot(&sy), x.dot(&y));
        let k = lat.canonical_class();
        prop_assert_eq!(lat.reflect(&k, &r).unwrap(), k);
    }

    #[test]
    fn reduction_is_order_independent(
        (cfg, d, order) in (representative(), 0usize..56).prop_flat_map(|(cfg, d)| {
            let order: Vec<usize> = (0..cfg.simple_roots().len()).collect();
            (Just(cfg), Just(d), Just(order).prop_shuffle())
        })
    ) {
        let cat = catalog();
        let d = &cat.pre_minus1()[d];
        let a = reduce_to_minus1(d, &cfg, cat).unwrap();
        let b = reduce_in_order(d, &cfg, cat, &order).unwrap();
        prop_assert_eq!(&a.curve, &b.curve);
        let sum = b.removed.iter().fold(b.curve.clone(), |acc, &i| &acc + &cfg.simple_roots()[i]);
        prop_assert_eq!(&sum, d);
        prop_assert_eq!((a.curve.square(), a.curve.dot(&cat.canonical_class())), (-1, -1));
    }

    #[test]
    fn contraction_preserves_pushed_forward_products(
        picks in subsequence((0..56usize).collect::<Vec<_>>(), 0..=20),
        x in class(7),
        y in class(7),
    ) {
        let cat = catalog();
        let mut curves: Vec<DivisorClass> = Vec::new();
        for i in picks {
            let c = &cat.pre_minus1()[i];
            if curves.len() < 7 && curves.iter().all(|e| e.dot(c) == 0) {
                curves.push(c.clone());
            }
        }
        let c = cat.lattice().blow_down(&curves).unwrap();
        prop_assert_eq!(c.target.degree(), 2 + curves.len() as i64);
        let push = |v: &DivisorClass| curves.iter().fold(v.clone(), |acc, e| acc.add_scaled(v.dot(e), e));
        let (px, py) = (c.project(&x).unwrap(), c.project(&y).unwrap());
        prop_assert_eq!(c.target.intersect(&px, &py), push(&x).dot(&push(&y)));
        prop_assert_eq!(c.project(&cat.canonical_class()).unwrap(), c.target.canonical_class());
        for e in &curves {
            prop_assert!(c.project(e).unwrap().coeffs().iter().all(|&a| a == 0));
        }
    }

    #[test]
    fn fingerprint_is_weyl_invariant(cfg in representative(), word in prop::collection::vec(0usize..7, 1..40)) {
        let g = action().word(&word);
        let image: Vec<DivisorClass> = cfg.simple_roots().iter().map(|r| g.apply(r)).collect();
        let img = Configuration::new(cfg.lattice(), image).unwrap();
        prop_assert_eq!(img.type_label(), cfg.type_label());
        prop_assert_eq!(orbit_fingerprint(&img, catalog()), orbit_fingerprint(&cfg, catalog()));
    }

    #[test]
    fn weyl_words_match_reflections(word in prop::collection::vec(0usize..7, 0..30), x in class(7)) {
        let lat = SurfaceLattice::degree_two();
        let simple = simple_roots();
        let by_reflection = word.iter().rev().fold(x.clone(), |acc, &s| lat.reflect(&acc, &simple[s]).unwrap());
        prop_assert_eq!(action().word(&word).apply(&x), by_reflection);
    }

    #[test]
    fn floor_of_root_part_is_exact(q in 2u64..2_000_000, b in 0i64..8) {
        let bound = SqrtBound { a: 0, b, q };
        let f = bound.floor_sqrt_part();
        prop_assert!(bound.at_least(f));
        prop_assert!(!bound.at_least(f + 1));
    }

    #[test]
    fn off_ramification_bound_grows_within_a_characteristic(i in 0usize..2000) {
        let qs: Vec<PrimePower> = dpl_core::arithmetic::prime_powers_up_to(20_000).unwrap();
        let p = qs[i % qs.len()];
        if let Some(next) = qs.iter().find(|n| n.q > p.q && n.is_char2() == p.is_char2() && p.q >= 5) {
            for case in dpl_core::arithmetic::ArithmeticCase::ALL {
                let a = off_ramification_lower_bound(p.q, case, p.is_char2()).unwrap();
                let b = off_ramification_lower_bound(next.q, case, next.is_char2()).unwrap();
                prop_assert!(a <= b);
            }
        }
    }
}
