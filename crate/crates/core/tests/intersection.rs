mod common;

use rand::Rng;

use tropica::error::{IntersectError, NonTransverseReason};
use tropica::intersect::{
    admissible_directions, dual_cell_area, stable_intersections_with_direction, total_multiplicity, IntersectionKind,
};
use tropica::number::{int, rat};
use tropica::*;

type Summary = Vec<(Point, u64, IntersectionKind)>;

fn summary(points: &[IntersectionPoint]) -> Summary {
    points.iter().map(|p| (p.point.clone(), p.multiplicity, p.kind)).collect()
}

fn curve(p: &BiPoly) -> TropicalCurve {
    tropical_curve(p)
}

/// Checks the stable intersection against crossings computed with a concrete
/// tiny translation: every crossing clusters at a reported point and the
/// cluster multiplicities agree.
fn assert_matches_explicit_eps(c1: &TropicalCurve, c2: &TropicalCurve, v: (i64, i64)) {
    let stable = stable_intersections_with_direction(c1, c2, v).unwrap();
    let eps = rat(1, 1_000_000_000);
    let crossings = common::explicit_eps_crossings(c1, c2, v, &eps);
    let mut sums = vec![0u64; stable.len()];
    for (q, m) in &crossings {
        let (k, d) = stable
            .iter()
            .enumerate()
            .map(|(k, s)| (k, common::dist2(&s.point, q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("a stable point near every crossing");
        assert!(d < 1e-10, "crossing {q} far from every stable point");
        sums[k] += m;
    }
    assert_eq!(sums, stable.iter().map(|s| s.multiplicity).collect::<Vec<_>>());
}

#[test]
fn two_generic_lines_meet_once() {
    let c1 = curve(&common::line_at(0, 0));
    let c2 = curve(&common::line_at(3, -2));
    let pts = transverse_intersections(&c1, &c2).unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0].multiplicity, 1);
    assert_eq!(summary(&stable_intersections(&c1, &c2)), summary(&pts));
}

#[test]
fn line_meets_conic_twice() {
    let line = common::line_at(-4, 0);
    let conic = common::smooth_conic();
    let pts = transverse_intersections(&curve(&line), &curve(&conic)).unwrap();
    assert_eq!(
        summary(&pts),
        vec![
            (Point::from_ints(-3, 1), 1, IntersectionKind::Transverse),
            (Point::from_ints(-2, 2), 1, IntersectionKind::Transverse)
        ]
    );
    let (_, union) = union_curve(&line, &conic);
    for p in &pts {
        assert_eq!(dual_cell_area(&union, &p.point), Some(int(1)));
    }
}

#[test]
fn tangential_crossing_has_multiplicity_two() {
    // the diagonal ray of the line crosses the conic edge of direction (-1, 1)
    let line = common::line_at(-1, -1);
    let conic = common::smooth_conic();
    let pts = transverse_intersections(&curve(&line), &curve(&conic)).unwrap();
    assert_eq!(summary(&pts), vec![(Point::from_ints(0, 0), 2, IntersectionKind::Transverse)]);
    let (_, union) = union_curve(&line, &conic);
    assert_eq!(dual_cell_area(&union, &Point::from_ints(0, 0)), Some(int(2)));
}

#[test]
fn shared_ray_lines_meet_at_one_vertex() {
    let c1 = curve(&common::line_at(0, 0));
    let c2 = curve(&common::line_at(2, 2));
    assert_eq!(
        transverse_intersections(&c1, &c2),
        Err(IntersectError::NonTransverse { reason: NonTransverseReason::OverlappingParallelEdges })
    );
    let pts = stable_intersections(&c1, &c2);
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0].multiplicity, 1);
    // explicit translation of the second line by (1e-6, 3e-6)
    let eps = rat(1, 1_000_000);
    let crossings = common::explicit_eps_crossings(&c1, &c2, (1, 3), &eps);
    assert_eq!(crossings.len(), 1);
    assert!(common::dist2(&crossings[0].0, &Point::from_ints(2, 2)) < 1e-10);
    assert_eq!(pts[0].point, Point::from_ints(2, 2));
}

#[test]
fn line_through_conic_vertex() {
    let line = curve(&common::line_at(-2, 0));
    let conic = curve(&common::smooth_conic());
    assert_eq!(
        transverse_intersections(&line, &conic),
        Err(IntersectError::NonTransverse { reason: NonTransverseReason::VertexOnCurve })
    );
    let pts = stable_intersections(&line, &conic);
    assert_eq!(summary(&pts), vec![(Point::from_ints(-1, 1), 2, IntersectionKind::StableLimit)]);
    for v in admissible_directions(&line, &conic, 3) {
        assert_matches_explicit_eps(&line, &conic, v);
    }
}

#[test]
fn conic_self_intersection_is_its_vertices() {
    let c = curve(&common::smooth_conic());
    let pts = stable_intersections(&c, &c);
    let mut vertices: Vec<Point> = c.vertices.iter().map(|v| v.position.clone()).collect();
    vertices.sort();
    assert_eq!(pts.iter().map(|p| p.point.clone()).collect::<Vec<_>>(), vertices);
    assert!(pts.iter().all(|p| p.multiplicity == 1));
    assert_eq!(total_multiplicity(&pts), 4);
}

#[test]
fn inadmissible_direction_is_rejected() {
    let c = curve(&common::line_at(0, 0));
    assert_eq!(
        stable_intersections_with_direction(&c, &c, (1, 1)),
        Err(IntersectError::InadmissibleDirection(1, 1))
    );
}

#[test]
fn bezout_on_random_pairs() {
    let mut r = common::rng(20);
    for _ in 0..200 {
        let d1 = r.random_range(1..=4);
        let d2 = r.random_range(1..=4);
        let p1 = common::random_bipoly(&mut r, d1);
        let p2 = common::random_bipoly(&mut r, d2);
        let report = bezout_check(&p1, &p2).unwrap();
        assert_eq!(report.total, u64::from(d1 * d2), "{p1:?} x {p2:?}");
        assert!(report.ok);
    }
    let non_standard = BiPoly::from_ints(&[((1, 0), 0), ((0, 1), 0), ((1, 1), 0)]);
    assert!(matches!(
        bezout_check(&non_standard, &common::smooth_conic()),
        Err(IntersectError::NonStandardSupport(_))
    ));
}

#[test]
fn stable_intersection_properties() {
    let mut r = common::rng(21);
    for _ in 0..60 {
        let d1 = r.random_range(1..=3);
        let d2 = r.random_range(1..=3);
        // small integer coefficients make coincidences frequent
        let mut small = |d: u32| {
            let mut terms = Vec::new();
            for i in 0..=d {
                for j in 0..=(d - i) {
                    terms.push(((i, j), int(r.random_range(-2..=2))));
                }
            }
            BiPoly::from_terms(&terms)
        };
        let c1 = curve(&small(d1));
        let c2 = curve(&small(d2));
        let base = summary(&stable_intersections(&c1, &c2));
        for v in admissible_directions(&c1, &c2, 3) {
            assert_eq!(summary(&stable_intersections_with_direction(&c1, &c2, v).unwrap()), base);
            assert_matches_explicit_eps(&c1, &c2, v);
        }
        assert_eq!(summary(&stable_intersections(&c2, &c1)), base);
        if let Ok(t) = transverse_intersections(&c1, &c2) {
            assert_eq!(summary(&t), base);
        }
        let self_points = stable_intersections(&c1, &c1);
        assert!(self_points.iter().all(|p| c1.vertices.iter().any(|v| v.position == p.point)));
        assert_eq!(total_multiplicity(&self_points), u64::from(d1 * d1));
    }
}

#[test]
fn multiplicity_equals_parallelogram_area() {
    let mut r = common::rng(22);
    for _ in 0..60 {
        let d1 = r.random_range(1..=3);
        let d2 = r.random_range(1..=3);
        let p1 = common::random_bipoly(&mut r, d1);
        let p2 = common::random_bipoly(&mut r, d2);
        let Ok(pts) = transverse_intersections(&curve(&p1), &curve(&p2)) else { continue };
        let (_, union) = union_curve(&p1, &p2);
        for p in pts {
            assert_eq!(dual_cell_area(&union, &p.point), Some(int(p.multiplicity as i64)));
        }
    }
}
