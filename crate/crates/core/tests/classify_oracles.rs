mod common;

use std::collections::BTreeSet;

use common::{int_classes, is_schur_ring_oracle, normalized, orbit_classes, set_partitions};
use num_rational::Rational64;
use proptest::prelude::*;
use schur_core::classify::{
    check_class_shape, classify_rational, classify_window, enumerate_schur_rings, exhaustive_window_search,
    ClassShapeVerdict, ClassificationVerdict, ClassifyRule,
};
use schur_core::schurring::{orbit_ring, symmetric_ring, trivial_ring, verify_schur_ring};
use schur_core::{Error, GroupContext, Partition, Universe, Verdict};

/// Every Schur ring over `Z/n`, by filtering all set partitions.
fn brute_force_rings(n: i64) -> BTreeSet<BTreeSet<Vec<i64>>> {
    let rest: Vec<i64> = (1..n).collect();
    set_partitions(&rest)
        .into_iter()
        .map(|mut classes| {
            classes.push(vec![0]);
            classes
        })
        .filter(|classes| is_schur_ring_oracle(n, classes))
        .map(|classes| normalized(&classes))
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=9 {
        let rings = enumerate_schur_rings(n, false).unwrap();
        let got: BTreeSet<BTreeSet<Vec<i64>>> = rings.iter().map(|r| int_classes(r.partition())).collect();
        assert_eq!(got.len(), rings.len(), "duplicates for n = {n}");
        assert_eq!(got, brute_force_rings(n), "n = {n}");
    }
}

#[test]
fn enumeration_contains_the_standard_rings() {
    for n in 3..=12 {
        let rings = enumerate_schur_rings(n, false).unwrap();
        let got: BTreeSet<BTreeSet<Vec<i64>>> = rings.iter().map(|r| int_classes(r.partition())).collect();
        let ctx = GroupContext::FiniteCyclic(n);
        for r in &rings {
            assert_eq!(verify_schur_ring(r.partition()), Verdict::Accept);
        }
        assert!(got.contains(&orbit_classes(n, &[])));
        assert!(got.contains(&int_classes(symmetric_ring(ctx, Universe::WholeGroup).unwrap().partition())));
        assert!(got.contains(&int_classes(trivial_ring(ctx).unwrap().partition())));
    }
}

#[test]
fn enumeration_is_deterministic_and_sorted() {
    let a: Vec<String> = enumerate_schur_rings(12, false).unwrap().iter().map(|r| r.partition().to_string()).collect();
    let b: Vec<String> = enumerate_schur_rings(12, false).unwrap().iter().map(|r| r.partition().to_string()).collect();
    assert_eq!(a, b);
    let lens: Vec<usize> = a.iter().map(|t| t.lines().count()).collect();
    assert!(lens.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn enumeration_guard() {
    assert!(matches!(enumerate_schur_rings(14, false), Err(Error::LimitExceeded(_))));
    assert!(enumerate_schur_rings(0, true).is_err());
}

#[test]
fn prime_order_rings_are_orbit_rings() {
    for p in [3i64, 5, 7, 11, 13] {
        let rings = enumerate_schur_rings(p, false).unwrap();
        let orbit_rings: BTreeSet<BTreeSet<Vec<i64>>> =
            common::units(p).into_iter().map(|u| orbit_classes(p, &[u])).collect();
        let got: BTreeSet<BTreeSet<Vec<i64>>> = rings.iter().map(|r| int_classes(r.partition())).collect();
        assert_eq!(got, orbit_rings, "p = {p}");
    }
}

fn window(radius: i64, classes: Vec<Vec<i64>>) -> Partition {
    let refs: Vec<&[i64]> = classes.iter().map(Vec::as_slice).collect();
    Partition::from_ints(GroupContext::InfiniteCyclic, Universe::Window { lo: -radius, hi: radius }, &refs)
}

#[test]
fn standard_fragments_classify_for_every_radius() {
    for r in 0..=10 {
        let symmetric = symmetric_ring(GroupContext::InfiniteCyclic, Universe::Window { lo: -r, hi: r }).unwrap();
        let expected =
            if r == 0 { ClassificationVerdict::GroupRingPattern } else { ClassificationVerdict::SymmetricPattern };
        assert_eq!(classify_window(symmetric.partition()).unwrap(), expected, "radius {r}");
        let singletons = window(r, (-r..=r).map(|e| vec![e]).collect());
        assert_eq!(classify_window(&singletons).unwrap(), ClassificationVerdict::GroupRingPattern, "radius {r}");
    }
}

#[test]
fn mixed_fragments_are_inconsistent() {
    for r in 2..=8 {
        for flip in 1..=r {
            let mut classes = vec![vec![0]];
            for e in 1..=r {
                if e == flip {
                    classes.push(vec![e]);
                    classes.push(vec![-e]);
                } else {
                    classes.push(vec![-e, e]);
                }
            }
            let v = classify_window(&window(r, classes)).unwrap();
            assert!(matches!(v, ClassificationVerdict::Inconsistent(_)), "radius {r} flip {flip}: {v:?}");
        }
    }
}

#[test]
fn window_classification_errors() {
    let ctx = GroupContext::InfiniteCyclic;
    let no_window = Partition::from_ints(ctx, Universe::ClassList, &[&[0], &[1]]);
    assert!(matches!(classify_window(&no_window), Err(Error::MissingWindow)));
    let lopsided = Partition::from_ints(ctx, Universe::Window { lo: -1, hi: 2 }, &[&[0], &[1], &[-1], &[2]]);
    assert!(matches!(classify_window(&lopsided), Err(Error::Precondition(_))));
}

#[test]
fn window_search_core_counts() {
    let mut previous = usize::MAX;
    for n in 1..=5 {
        let count = exhaustive_window_search(n, 1).unwrap().len();
        assert_eq!(count, 2, "N = {n}");
        assert!(count <= previous);
        previous = count;
    }
    for n in 2..=5 {
        for core in 1..n {
            let cores = exhaustive_window_search(n, core).unwrap();
            let singletons = window(core, (-core..=core).map(|e| vec![e]).collect());
            let pairs = symmetric_ring(GroupContext::InfiniteCyclic, Universe::Window { lo: -core, hi: core }).unwrap();
            assert_eq!(cores, vec![singletons, pairs.partition().clone()], "N = {n}, core = {core}");
        }
    }
    assert!(matches!(exhaustive_window_search(6, 1), Err(Error::LimitExceeded(_))));
    assert!(matches!(exhaustive_window_search(2, 3), Err(Error::LimitExceeded(_))));
}

fn constructor(v: &ClassShapeVerdict) -> u8 {
    match v {
        ClassShapeVerdict::Singleton(_) => 0,
        ClassShapeVerdict::SymmetricPair(_) => 1,
        ClassShapeVerdict::Violation(_) => 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn class_shape_is_negation_symmetric(class in prop::collection::btree_set(prop_oneof![-40i64..=-1, 1i64..=40], 1..6)) {
        let c: Vec<i64> = class.iter().copied().collect();
        let neg: Vec<i64> = class.iter().map(|x| -x).collect();
        let a = check_class_shape(&c, true).unwrap();
        let b = check_class_shape(&neg, true).unwrap();
        prop_assert_eq!(constructor(&a), constructor(&b));
    }

    #[test]
    fn class_shape_accepts_exactly_generator_shapes(class in prop::collection::btree_set(prop_oneof![-40i64..=-1, 1i64..=40], 1..5)) {
        let c: Vec<i64> = class.iter().copied().collect();
        let g = common_gcd(&c);
        let expected = match c.as_slice() {
            [x] => ClassShapeVerdict::Singleton(g.max(*x).max(-*x)),
            [x, y] if *x == -*y => ClassShapeVerdict::SymmetricPair(*y),
            _ => ClassShapeVerdict::Violation(match check_class_shape(&c, true).unwrap() {
                ClassShapeVerdict::Violation(w) => w,
                other => return Err(TestCaseError::fail(format!("{c:?} accepted as {other:?}"))),
            }),
        };
        prop_assert_eq!(check_class_shape(&c, true).unwrap(), expected);
    }

    #[test]
    fn rational_families_classify_by_type(
        gens in prop::collection::btree_set((1i64..=30, 1i64..=12), 1..5),
        kinds in prop::collection::vec(any::<bool>(), 4)
    ) {
        let gens: BTreeSet<Rational64> = gens.into_iter().map(|(a, b)| Rational64::new(a, b)).collect();
        let mut classes = Vec::new();
        for (g, &pair) in gens.iter().zip(kinds.iter().cycle()) {
            if pair {
                classes.push(vec![-*g, *g]);
            } else {
                classes.push(vec![*g]);
                classes.push(vec![-*g]);
            }
        }
        let pairs = gens.iter().zip(kinds.iter().cycle()).filter(|(_, &p)| p).count();
        let v = classify_rational(&classes).unwrap();
        if pairs == 0 {
            prop_assert_eq!(v, ClassificationVerdict::GroupRingPattern);
        } else if pairs == gens.len() {
            prop_assert_eq!(v, ClassificationVerdict::SymmetricPattern);
        } else {
            let w = v.witness().unwrap();
            prop_assert_eq!(w.rule, ClassifyRule::MixedTypes);
            prop_assert!(w.message.contains("case (ii)"));
        }
    }
}

fn common_gcd(c: &[i64]) -> i64 {
    c.iter().fold(0i64, |a, &b| num_integer::Integer::gcd(&a, &b))
}

#[test]
fn rational_classifier_errors() {
    let r = |a, b| Rational64::new(a, b);
    assert!(matches!(classify_rational(&[vec![r(1, 2)]]), Err(Error::NotNegationClosed(_))));
    assert!(classify_rational(&[vec![r(0, 1)]]).is_err());
    assert!(classify_rational(&[vec![r(1, 2), r(-1, 2)], vec![r(1, 2), r(-1, 2)]]).is_err());
}

#[test]
fn orbit_rings_over_primes_verify_under_every_unit() {
    for p in [3i64, 5, 7, 11, 13] {
        for u in common::units(p) {
            assert_eq!(verify_schur_ring(orbit_ring(p, &[u]).unwrap().partition()), Verdict::Accept);
        }
    }
}
