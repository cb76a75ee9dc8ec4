use std::collections::BTreeSet;

use proptest::prelude::*;

use severi_core::lattice2::{
    affine_span, divisors, intermediate_lattices, lattice_index, AffineLattice2, LinearLattice2,
    Point,
};

fn point(bound: i64) -> impl Strategy<Value = Point> {
    (-bound..=bound, -bound..=bound).prop_map(|(x, y)| Point::new(x, y))
}

fn lattice() -> impl Strategy<Value = LinearLattice2> {
    prop::collection::vec(point(12), 2..5)
        .prop_filter_map("rank two", |g| LinearLattice2::span(&g).ok())
}

/// Every lattice containing `sub`, found by scanning Hermite forms
/// `[[d1, e], [0, d2]]` with `d1·d2` dividing the index.
fn superlattices_brute_force(sub: &LinearLattice2) -> BTreeSet<LinearLattice2> {
    let n = sub.index() as i64;
    let gens = sub.basis();
    let mut out = BTreeSet::new();
    for d1 in 1..=n {
        for d2 in 1..=n {
            if n % (d1 * d2) != 0 {
                continue;
            }
            for e in 0..d1 {
                let l = LinearLattice2::span(&[Point::new(d1, 0), Point::new(e, d2)]).unwrap();
                if gens.iter().all(|&g| l.contains(g)) {
                    out.insert(l);
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn span_is_canonical(gens in prop::collection::vec(point(12), 2..5)) {
        if let Ok(l) = LinearLattice2::span(&gens) {
            prop_assert!(gens.iter().all(|&g| l.contains(g)));
            prop_assert_eq!(LinearLattice2::span(&l.basis()).unwrap(), l);
            let mut shuffled = gens.clone();
            shuffled.reverse();
            prop_assert_eq!(LinearLattice2::span(&shuffled).unwrap(), l);
        }
    }

    #[test]
    fn span_is_minimal(gens in prop::collection::vec(point(8), 2..4)) {
        if let Ok(l) = LinearLattice2::span(&gens) {
            prop_assume!(l.index() <= 60);
            let n = l.index() as i64;
            for d1 in 1..=n {
                for d2 in 1..=n / d1 {
                    for e in 0..d1 {
                        let m = LinearLattice2::span(&[Point::new(d1, 0), Point::new(e, d2)])
                            .unwrap();
                        if gens.iter().all(|&g| m.contains(g)) {
                            prop_assert!(l.is_sublattice_of(&m), "{:?} misses {:?}", m, l);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn index_is_multiplicative(a in lattice(), b in lattice()) {
        let both = LinearLattice2::span(&[a.basis()[0], a.basis()[1], b.basis()[0], b.basis()[1]])
            .unwrap();
        let via = lattice_index(&a, &both).unwrap() * both.index();
        prop_assert_eq!(via, a.index());
    }

    #[test]
    fn rotation_is_involutive(l in lattice()) {
        prop_assert_eq!(l.rotate90().rotate_back(), l);
        prop_assert_eq!(l.rotate90().index(), l.index());
        for v in l.basis() {
            prop_assert!(l.rotate90().contains(v.rot90()));
        }
    }

    #[test]
    fn coordinates_round_trip(l in lattice(), c in point(20)) {
        let v = l.from_coordinates(c);
        prop_assert!(l.contains(v));
        prop_assert_eq!(l.coordinates(v), Some(c));
    }

    #[test]
    fn affine_reduction_is_idempotent(l in lattice(), p in point(50)) {
        let a = AffineLattice2::new(p, l);
        prop_assert!(a.contains(p));
        prop_assert_eq!(AffineLattice2::new(a.basepoint(), l), a);
        prop_assert_eq!(AffineLattice2::new(p + l.basis()[1], l), a);
    }

    #[test]
    fn intermediate_lattices_are_complete(l in lattice()) {
        prop_assume!(l.index() <= 60);
        let expected = superlattices_brute_force(&l);
        match intermediate_lattices(&l) {
            Ok(found) => {
                prop_assert!(l.has_cyclic_quotient());
                let set: BTreeSet<_> = found.iter().copied().collect();
                prop_assert_eq!(set.len(), found.len());
                prop_assert_eq!(&set, &expected);
                let ds: Vec<u64> = found.iter().map(|n| lattice_index(&l, n).unwrap()).collect();
                prop_assert_eq!(ds, divisors(l.index()));
            }
            Err(_) => prop_assert!(!l.has_cyclic_quotient()),
        }
    }

    #[test]
    fn affine_span_contains_points(pts in prop::collection::vec(point(10), 3..7)) {
        if let Ok(m) = affine_span(&pts) {
            prop_assert!(pts.iter().all(|&p| m.contains(p)));
            let diffs: Vec<Point> = pts.iter().map(|&p| p - pts[0]).collect();
            prop_assert_eq!(*m.linear(), LinearLattice2::span(&diffs).unwrap());
        }
    }
}

#[test]
fn divisors_match_trial_division() {
    for n in 1..=500u64 {
        let expected: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        assert_eq!(divisors(n), expected);
    }
}

#[test]
fn non_cyclic_quotient_is_rejected() {
    let l = LinearLattice2::span(&[Point::new(2, 0), Point::new(0, 2)]).unwrap();
    assert!(!l.has_cyclic_quotient());
    assert!(intermediate_lattices(&l).is_err());
}
