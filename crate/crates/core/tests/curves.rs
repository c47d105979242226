mod common;

use std::collections::BTreeSet;

use tropica::curve::{BoundedEdge, CurveVertex, Piece, Ray};
use tropica::error::{BalanceError, SubdivisionError};
use tropica::geometry::{Direction, LatticePoint};
use tropica::number::rat;
use tropica::*;

fn lp(i: i64, j: i64) -> LatticePoint {
    LatticePoint::new(i, j)
}

fn sorted_vertices(c: &TropicalCurve) -> Vec<Point> {
    let mut v: Vec<Point> = c.vertices.iter().map(|v| v.position.clone()).collect();
    v.sort();
    v
}

fn corpus(seed: u64, n: usize) -> Vec<BiPoly> {
    let mut r = common::rng(seed);
    (0..n)
        .map(|_| {
            let d = 1 + (rand::Rng::random_range(&mut r, 0..5u32));
            common::random_bipoly(&mut r, d)
        })
        .collect()
}

#[test]
fn subdivision_fixtures() {
    let s = dual_subdivision(&common::line_fixture());
    assert_eq!(s.cells.len(), 1);
    assert!(s.find_cell(&[lp(0, 0), lp(1, 0), lp(0, 1)]).is_some());
    let s = dual_subdivision(&common::smooth_conic());
    assert_eq!(s.cells.len(), 4);
    assert!(s.cells.iter().all(|c| c.is_triangle() && c.twice_area() == 1));
    let s = dual_subdivision(&common::weighted_conic());
    let e = s.find_edge(lp(0, 0), lp(0, 2)).expect("segment through (0,1)");
    assert_eq!(s.edges[e].lattice_length(), 2);
}

#[test]
fn collinear_support_is_flagged() {
    let s = dual_subdivision(&BiPoly::from_ints(&[((0, 0), 0), ((1, 1), 0), ((2, 2), -3)]));
    assert_eq!(s.dimension, 1);
    assert!(s.is_degenerate());
    let c = tropical_curve(&BiPoly::from_ints(&[((0, 0), 0), ((1, 1), 0), ((2, 2), -3)]));
    assert_eq!(c.lines.len(), 2);
    assert!(c.lines.iter().all(|l| l.direction == Direction { dx: 1, dy: -1 }));
}

#[test]
fn curve_fixtures() {
    let c = tropical_curve(&common::line_fixture());
    assert_eq!(sorted_vertices(&c), vec![Point::new(rat(-3, 2), rat(11, 2))]);
    let dirs: BTreeSet<(i64, i64, u64)> = c.rays.iter().map(|r| (r.direction.dx, r.direction.dy, r.weight)).collect();
    assert_eq!(dirs, BTreeSet::from([(-1, 0, 1), (0, -1, 1), (1, 1, 1)]));

    let c = tropical_curve(&common::smooth_conic());
    assert_eq!(
        sorted_vertices(&c),
        vec![Point::from_ints(-1, 1), Point::from_ints(-1, 2), Point::from_ints(1, -1), Point::from_ints(2, -1)]
    );

    let c = tropical_curve(&common::weighted_conic());
    let heavy = c.edges.iter().map(|e| e.weight).chain(c.rays.iter().map(|r| r.weight)).filter(|w| *w == 2).count();
    assert_eq!(heavy, 2);

    assert!(tropical_curve(&BiPoly::from_ints(&[((1, 2), 7)])).is_empty());
}

#[test]
fn degrees() {
    assert_eq!(degree(&tropical_curve(&common::line_fixture())).degree, 1);
    assert_eq!(degree(&tropical_curve(&common::smooth_conic())).degree, 2);
    assert_eq!(degree(&tropical_curve(&common::weighted_conic())).degree, 2);
    assert_eq!(degree(&tropical_curve(&common::hexagonal_cubic())).degree, 3);
    let mut r = common::rng(5);
    for d in 1..=5 {
        let p = common::random_bipoly(&mut r, d);
        assert_eq!(degree(&tropical_curve(&p)).degree, u64::from(d));
    }
}

#[test]
fn balancing_fixtures() {
    let star = |dirs: &[(i64, i64)]| TropicalCurve {
        vertices: vec![CurveVertex { position: Point::from_ints(0, 0), cell: None }],
        rays: dirs
            .iter()
            .map(|&(dx, dy)| Ray { base: 0, direction: Direction { dx, dy }, weight: 1, dual: None })
            .collect(),
        ..TropicalCurve::default()
    };
    assert!(check_balancing(&star(&[(-1, 0), (0, -1), (1, 1)])).unwrap().is_balanced());
    let report = check_balancing(&star(&[(-1, 0), (0, -1)])).unwrap();
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].vertex, 0);
    assert!(matches!(check_balancing(&star(&[(-2, 0), (0, -1), (1, 1)])), Err(BalanceError::NonPrimitive { .. })));

    let edge = TropicalCurve {
        vertices: vec![
            CurveVertex { position: Point::from_ints(0, 0), cell: None },
            CurveVertex { position: Point::from_ints(1, 0), cell: None },
        ],
        edges: vec![BoundedEdge { from: 0, to: 1, direction: Direction { dx: -1, dy: 0 }, weight: 1, dual: None }],
        ..TropicalCurve::default()
    };
    assert!(matches!(check_balancing(&edge), Err(BalanceError::DirectionMismatch { .. })));
}

#[test]
fn random_curves_are_balanced() {
    for p in corpus(10, 200) {
        let c = tropical_curve(&p);
        let report = check_balancing(&c).unwrap();
        assert!(report.is_balanced(), "{p:?}: {:?}", report.violations);
    }
}

#[test]
fn duality_and_weight_law() {
    for p in corpus(11, 200) {
        let c = tropical_curve(&p);
        let sub = c.dual.as_ref().unwrap();
        let d = p.degree();
        for e in &c.edges {
            let s = &sub.edges[e.dual.unwrap()];
            assert_eq!(e.weight + 1, common::lattice_count(s.start, s.end));
            let (di, dj) = s.end.sub(s.start);
            assert_eq!(e.direction.dot(di, dj), 0);
            assert!(s.is_interior());
        }
        for r in &c.rays {
            let s = &sub.edges[r.dual.unwrap()];
            assert_eq!(r.weight + 1, common::lattice_count(s.start, s.end));
            let (di, dj) = s.end.sub(s.start);
            assert_eq!(r.direction.dot(di, dj), 0);
            assert!(!s.is_interior());
        }
        assert_eq!(sub.cells_twice_area(), i64::from(d * d));
        assert!(c.vertices.len() <= (d * d) as usize);
    }
}

#[test]
fn membership_matches_geometry() {
    let mut r = common::rng(12);
    for p in corpus(13, 60) {
        let c = tropical_curve(&p);
        let geometry = c.edge_geometry();
        for _ in 0..100 {
            let g = &geometry[rand::Rng::random_range(&mut r, 0..geometry.len())];
            let s = match g.kind {
                tropica::curve::EdgeKind::Bounded => rat(rand::Rng::random_range(&mut r, 0..=64), 64),
                _ => rat(rand::Rng::random_range(&mut r, 0..=400), 16),
            };
            let q = g.point_at(&s);
            assert!(p.maximizing_terms(&q).len() >= 2);
            assert!(p.is_on_curve(&q));
        }
        let mut off = 0;
        while off < 100 {
            let q = common::random_point(&mut r);
            if common::lies_on_curve(&c, &q) {
                assert!(p.is_on_curve(&q));
                continue;
            }
            assert_eq!(p.maximizing_terms(&q).len(), 1);
            off += 1;
        }
    }
}

#[test]
fn reconstruction_reproduces_curves() {
    for p in corpus(14, 100) {
        let c = tropical_curve(&p);
        let sub = c.dual.clone().unwrap();
        let anchor = c.vertices[0].cell.unwrap();
        let rebuilt = curve_from_dual_description(&sub, anchor, c.vertices[0].position.clone()).unwrap();
        assert_eq!(rebuilt, c);
    }
}

#[test]
fn reconstruction_fixtures() {
    let line = tropical_curve(&BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0)]));
    let sub = line.dual.clone().unwrap();
    let rebuilt = curve_from_dual_description(&sub, 0, Point::from_ints(0, 0)).unwrap();
    assert_eq!(sorted_vertices(&rebuilt), vec![Point::from_ints(0, 0)]);
    assert_eq!(rebuilt.rays.len(), 3);

    let conic = tropical_curve(&common::smooth_conic());
    let sub = conic.dual.clone().unwrap();
    let anchor = conic.vertices.iter().find(|v| v.position == Point::from_ints(-1, 1)).unwrap().cell.unwrap();
    let rebuilt = curve_from_dual_description(&sub, anchor, Point::from_ints(-1, 1)).unwrap();
    assert_eq!(rebuilt.weighted_pieces(), conic.weighted_pieces());

    // A single cell covering all of Δ_2: every edge is a ray.
    let flat = BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 0), ((2, 0), 0), ((0, 2), 0)]);
    let sub = dual_subdivision(&flat);
    assert_eq!(sub.cells.len(), 1);
    let rebuilt = curve_from_dual_description(&sub, 0, Point::from_ints(3, 4)).unwrap();
    assert_eq!(rebuilt.vertices.len(), 1);
    assert!(rebuilt.edges.is_empty());
    assert!(rebuilt.rays.iter().all(|r| r.weight == 2));

    assert_eq!(curve_from_dual_description(&sub, 5, Point::from_ints(0, 0)), Err(SubdivisionError::UnknownCell(5)));
}

#[test]
fn union_with_itself_doubles_weights() {
    for p in corpus(15, 40) {
        let (prod, union) = union_curve(&p, &p);
        assert_eq!(prod, p.mul(&p));
        let doubled: Vec<Piece> = tropical_curve(&p)
            .weighted_pieces()
            .into_iter()
            .map(|piece| match piece {
                Piece::Segment(a, b, d, w) => Piece::Segment(a, b, d, 2 * w),
                Piece::Ray(a, d, w) => Piece::Ray(a, d, 2 * w),
                Piece::Line(a, d, w) => Piece::Line(a, d, 2 * w),
            })
            .collect();
        assert_eq!(union.weighted_pieces(), doubled);
    }
}

#[test]
fn union_of_two_lines_is_pointwise_union() {
    let mut r = common::rng(16);
    let l1 = BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0)]);
    let l2 = BiPoly::from_ints(&[((0, 0), 3), ((1, 0), 0), ((0, 1), 0)]);
    let (prod, union) = union_curve(&l1, &l2);
    assert_eq!(degree(&union).degree, 2);
    let c1 = tropical_curve(&l1);
    let c2 = tropical_curve(&l2);
    for c in [&c1, &c2] {
        for g in c.edge_geometry() {
            for k in 0..20 {
                let q = g.point_at(&rat(k, 4));
                assert!(prod.is_on_curve(&q));
                assert!(common::lies_on_curve(&union, &q));
            }
        }
    }
    for _ in 0..300 {
        let q = common::random_point(&mut r);
        let expected = common::lies_on_curve(&c1, &q) || common::lies_on_curve(&c2, &q);
        assert_eq!(common::lies_on_curve(&union, &q), expected);
        assert_eq!(prod.is_on_curve(&q), expected);
    }
}
