use proptest::prelude::*;

use severi_core::lattice2::{affine_span, AffineLattice2, Point};
use severi_core::polygon::{InteriorClassification, LatticePolygon};

fn polygon() -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((-8i64..=8, -8i64..=8), 3..9).prop_filter_map("nondegenerate", |pts| {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        LatticePolygon::convex_hull(&pts).ok()
    })
}

/// Points of the closed polygon by half-plane tests on every edge.
fn closed_points(p: &LatticePolygon) -> Vec<Point> {
    let (lo, hi) = p.bounding_box();
    let v = p.vertices();
    let mut out = Vec::new();
    for y in lo.y..=hi.y {
        for x in lo.x..=hi.x {
            let q = Point::new(x, y);
            let inside = (0..v.len()).all(|i| (v[(i + 1) % v.len()] - v[i]).cross(q - v[i]) >= 0);
            if inside {
                out.push(q);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn point_counts_are_consistent(p in polygon()) {
        let closed = closed_points(&p);
        let interior = p.interior_points();
        let boundary = p.boundary_points();
        prop_assert_eq!(closed.len(), interior.len() + boundary.len());
        prop_assert_eq!(boundary.len() as u64, p.boundary_count());
        prop_assert!(interior.iter().all(|&q| p.strictly_contains(q)));
        prop_assert!(boundary.iter().all(|&q| !p.strictly_contains(q)));
        prop_assert!(p.verify_pick(&AffineLattice2::Z2).unwrap());
    }

    #[test]
    fn facet_normals_point_inward(p in polygon()) {
        let facets = p.facets();
        prop_assert_eq!(facets.len(), p.vertices().len());
        for f in &facets {
            prop_assert!(f.normal.is_primitive());
            prop_assert_eq!(f.normal.dot(f.edge), 0);
            prop_assert_eq!(f.edge.content() as u64, f.length);
            for &v in p.vertices() {
                prop_assert!(f.normal.dot(v - f.start) >= 0);
            }
        }
        let lengths: u64 = facets.iter().map(|f| f.length).sum();
        prop_assert_eq!(lengths, p.boundary_count());
    }

    #[test]
    fn width_matches_brute_force(p in polygon()) {
        prop_assert_eq!(p.lattice_width_z2(), p.lattice_width_brute_force(25));
    }

    #[test]
    fn pick_holds_over_boundary_lattice(p in polygon()) {
        let m0 = affine_span(&p.boundary_points()).unwrap();
        prop_assert!(p.verify_pick(&m0).unwrap());
        let (normalized, frame) = p.normalize_to_lattice(&m0).unwrap();
        let images: Vec<Point> = normalized.vertices().iter().map(|&c| frame.apply(c)).collect();
        prop_assert_eq!(images, p.vertices().to_vec());
        prop_assert_eq!(
            normalized.interior_points().len(),
            p.interior_points_in_lattice(&m0).len()
        );
    }

    #[test]
    fn empty_interior_is_classified(p in polygon()) {
        let class = p.classify_interior_empty(&AffineLattice2::Z2).unwrap();
        prop_assert_eq!(
            class == InteriorClassification::NonEmptyInterior,
            !p.interior_points().is_empty()
        );
    }

    #[test]
    fn hull_is_order_independent(p in polygon()) {
        let mut pts = p.vertices().to_vec();
        pts.reverse();
        pts.extend(p.interior_points());
        prop_assert_eq!(LatticePolygon::convex_hull(&pts).unwrap(), p);
    }
}

#[test]
fn named_widths() {
    let square = LatticePolygon::from_tuples(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
    let w = square.lattice_width_z2();
    assert_eq!((w.width, w.direction), (1, Point::new(0, 1)));
    let d3 = LatticePolygon::from_tuples(&[(0, 0), (3, 0), (0, 3)]).unwrap();
    assert_eq!(d3.lattice_width_z2().width, 3);
    let d2 = LatticePolygon::from_tuples(&[(0, 0), (2, 0), (0, 2)]).unwrap();
    assert_eq!(
        d2.classify_interior_empty(&AffineLattice2::Z2).unwrap(),
        InteriorClassification::TwicePrimitiveTriangle
    );
}

#[test]
fn invalid_inputs_are_rejected() {
    let cases: [&[(i64, i64)]; 4] = [
        &[(0, 0), (1, 1)],
        &[(0, 0), (1, 1), (2, 2)],
        &[(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)],
        &[(0, 0), (2, 2), (2, 0), (0, 2)],
    ];
    for pts in cases {
        assert!(LatticePolygon::from_tuples(pts).is_err(), "{pts:?}");
    }
}
