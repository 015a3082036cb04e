use std::collections::BTreeSet;

use dpl_core::classes::ClassCatalog;
use dpl_core::configuration::{registry_entries, registry_representative, AdeLabel, Configuration};
use dpl_core::curves::{
    classes_meeting, derive_configuration, derive_pair_curves_at, eckardt_quadruples, free_minus1_curves,
    is_minus1_curve, lemma315_curves, pair_classes, reduce_to_minus1, terminal_roots,
};
use dpl_core::lattice::DivisorClass;

fn representatives(cat: &ClassCatalog) -> Vec<(String, Configuration)> {
    registry_entries()
        .iter()
        .map(|e| {
            let name = match e.variant {
                Some(v) => format!("{} ({v})", e.type_name),
                None => e.type_name.to_string(),
            };
            (name, e.configuration(cat).unwrap())
        })
        .collect()
}

fn rep(cat: &ClassCatalog, ty: &str, variant: Option<&str>) -> Configuration {
    registry_representative(&ty.parse().unwrap(), variant, cat).unwrap()
}

#[test]
fn classes_meeting_a_root_pair_off() {
    let cat = ClassCatalog::degree_two();
    let k = cat.canonical_class();
    for f in cat.roots() {
        let twelve = classes_meeting(f, 1, &cat);
        assert_eq!(twelve.len(), 12);
        let target = &(-&k) - f;
        for d in &twelve {
            let partners: Vec<&DivisorClass> = twelve.iter().filter(|e| e.dot(d) == 1).collect();
            assert_eq!(partners.len(), 1, "{d} against {f}");
            assert_ne!(partners[0], d);
            assert_eq!(&(d + partners[0]), &target);
        }
    }
}

#[test]
fn pair_derivation_is_independent_of_root_choice() {
    let cat = ClassCatalog::degree_two();
    for (name, cfg) in representatives(&cat) {
        let comps = cfg.components();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let mut results = BTreeSet::new();
                for &f in &comps[i].roots {
                    for &g in &comps[j].roots {
                        results.insert(derive_pair_curves_at(&cfg, &cat, f, g).unwrap());
                    }
                }
                assert_eq!(results.len(), 1, "{name}: components {i} and {j}");
            }
        }
    }
}

#[test]
fn reduction_stays_attached_to_the_component() {
    let cat = ClassCatalog::degree_two();
    for (name, cfg) in representatives(&cat) {
        let s = cfg.simple_roots();
        for comp in cfg.components() {
            for d in cat.pre_minus1() {
                if !comp.roots.iter().any(|&f| d.dot(&s[f]) == 1) {
                    continue;
                }
                let e = reduce_to_minus1(d, &cfg, &cat).unwrap().curve;
                assert!(
                    comp.roots.iter().any(|&g| e.dot(&s[g]) == 1),
                    "{name}: {d} reduces to {e}"
                );
            }
        }
    }
}

#[test]
fn reduction_intermediates_are_pre_minus1_classes() {
    let cat = ClassCatalog::degree_two();
    for (name, cfg) in representatives(&cat)
        .into_iter()
        .filter(|(_, c)| c.delta() == 1 && c.type_label().total_rank() > 2)
    {
        let s = cfg.simple_roots();
        let t = terminal_roots(&cfg, 0);
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                let (d1, d2) = pair_classes(&s[t[a]], &s[t[b]], &cat).unwrap();
                for d in [d1, d2] {
                    let r = reduce_to_minus1(&d, &cfg, &cat).unwrap();
                    let mut cur = d.clone();
                    for &i in &r.removed {
                        assert_eq!(cur.dot(&s[i]), -1, "{name}");
                        cur = &cur - &s[i];
                        assert!(cat.pre_index(&cur).is_some(), "{name}: {cur}");
                    }
                    assert_eq!(cur, r.curve);
                }
            }
        }
    }
}

#[test]
fn every_derivation_contracts_disjoint_honest_curves() {
    let cat = ClassCatalog::degree_two();
    for (name, cfg) in representatives(&cat) {
        let g = derive_configuration(&cfg, &cat).unwrap_or_else(|e| panic!("{name}: {e}"));
        for (i, a) in g.curves.iter().enumerate() {
            assert!(is_minus1_curve(a, &cfg, &cat).unwrap(), "{name}");
            for b in &g.curves[i + 1..] {
                assert_eq!(a.dot(b), 0, "{name}");
            }
        }
    }
}

#[test]
fn a1_pairs_have_an_honest_pair_class() {
    let cat = ClassCatalog::degree_two();
    for (name, cfg) in representatives(&cat) {
        let s = cfg.simple_roots();
        let a1: Vec<usize> = cfg
            .components()
            .iter()
            .filter(|c| c.label == AdeLabel::A1)
            .map(|c| c.roots[0])
            .collect();
        for i in 0..a1.len() {
            for j in i + 1..a1.len() {
                let (d1, d2) = pair_classes(&s[a1[i]], &s[a1[j]], &cat).unwrap();
                let honest = [d1, d2]
                    .iter()
                    .filter(|d| is_minus1_curve(d, &cfg, &cat).unwrap())
                    .count();
                assert!(honest >= 1, "{name}");
            }
        }
    }
}

#[test]
fn curves_through_three_a1_points_meet_nothing_else() {
    let cat = ClassCatalog::degree_two();
    for (name, cfg) in representatives(&cat) {
        let s = cfg.simple_roots();
        for e in lemma315_curves(&cfg, &cat).unwrap() {
            let met: Vec<i64> = s.iter().map(|f| e.dot(f)).filter(|&v| v != 0).collect();
            assert_eq!(met, vec![1, 1, 1], "{name}: {e}");
        }
    }
}

#[test]
fn curves_through_three_points_share_one_point_when_delta_at_least_five() {
    let cat = ClassCatalog::degree_two();
    for (name, cfg) in representatives(&cat).into_iter().filter(|(_, c)| c.delta() >= 5) {
        let s = cfg.simple_roots();
        let curves = lemma315_curves(&cfg, &cat).unwrap();
        let hits = |e: &DivisorClass| -> BTreeSet<usize> { (0..s.len()).filter(|&i| e.dot(&s[i]) == 1).collect() };
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i + 1..] {
                assert_eq!(hits(a).intersection(&hits(b)).count(), 1, "{name}");
                assert_eq!(a.dot(b), 0, "{name}");
            }
        }
    }
}

#[test]
fn counts_of_curves_through_three_a1_points() {
    let cat = ClassCatalog::degree_two();
    for (ty, curves, per_root) in [("7A1", 7, 3), ("6A1", 4, 2), ("5A1", 2, 0)] {
        let cfg = rep(&cat, ty, None);
        let found = lemma315_curves(&cfg, &cat).unwrap();
        assert_eq!(found.len(), curves, "{ty}");
        if per_root > 0 {
            for f in cfg.simple_roots() {
                assert_eq!(found.iter().filter(|e| e.dot(f) == 1).count(), per_root, "{ty}");
            }
        }
    }
    assert!(lemma315_curves(&rep(&cat, "4A1", Some("no-L315-curve")), &cat)
        .unwrap()
        .is_empty());
    assert_eq!(
        lemma315_curves(&rep(&cat, "4A1", Some("with-L315-curve")), &cat)
            .unwrap()
            .len(),
        1
    );
}

#[test]
fn free_curve_counts_of_the_minimal_cases() {
    let cat = ClassCatalog::degree_two();
    let counts: Vec<usize> = [("A1", None), ("A2", None), ("4A1", Some("no-L315-curve"))]
        .into_iter()
        .map(|(ty, v)| free_minus1_curves(&rep(&cat, ty, v), &cat).len())
        .collect();
    assert_eq!(counts, [32, 20, 8]);
}

#[test]
fn eckardt_quadruple_count() {
    let cat = ClassCatalog::degree_two();
    let quads = eckardt_quadruples(&cat).unwrap();
    // Regression constant from the exhaustive 56-choose-4 filter.
    assert_eq!(quads.len(), EXPECTED_QUADRUPLES);
    let p = cat.pre_minus1();
    // Independent count: 4-sets of distinct classes summing to -2K.
    let k = cat.canonical_class();
    let complementary = (0..p.len())
        .filter(|&a| cat.pre_index(&(&(-&k) - &p[a])).is_some_and(|b| b > a))
        .count();
    assert_eq!(complementary, 28);
    let target = cat.canonical_class().scale(-2);
    let mut by_sum = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            for c in b + 1..p.len() {
                let partial = &(&p[a] + &p[b]) + &p[c];
                if let Some(d) = cat.pre_index(&(&target - &partial)) {
                    if d > c {
                        by_sum += 1;
                    }
                }
            }
        }
    }
    // Those made of two pairs summing to -K (28 such pairs) are the only others.
    let anticanonical_pairs = 28;
    assert_eq!(
        by_sum,
        quads.len() + anticanonical_pairs * (anticanonical_pairs - 1) / 2
    );
    // No five classes meet pairwise once.
    for q in &quads {
        assert!(!(0..p.len()).any(|x| !q.contains(&x) && q.iter().all(|&y| p[x].dot(&p[y]) == 1)));
    }
}

const EXPECTED_QUADRUPLES: usize = 630;
