mod common;

use tropica::number::int;
use tropica::*;

#[test]
fn evaluation_fixtures() {
    let p = UniPoly::from_ints(&[(0, 0), (1, 0)]);
    assert_eq!(hyper_eval_uni(&p, &TropicalNumber::from_int(0)), DownSet::ClosedRay(TropicalNumber::from_int(0)));
    assert_eq!(hyper_eval_uni(&p, &TropicalNumber::from_int(5)), DownSet::Singleton(TropicalNumber::from_int(5)));
    let q = UniPoly::from_ints(&[(0, 0), (1, 0), (2, -1)]);
    assert_eq!(hyper_eval_uni(&q, &TropicalNumber::from_int(1)), DownSet::ClosedRay(TropicalNumber::from_int(1)));
    // at -∞ only the constant term survives
    assert_eq!(hyper_eval_uni(&q, &TropicalNumber::Bottom), DownSet::Singleton(TropicalNumber::from_int(0)));
    let no_constant = UniPoly::from_ints(&[(1, 0), (2, 0)]);
    assert_eq!(hyper_eval_uni(&no_constant, &TropicalNumber::Bottom), DownSet::Singleton(TropicalNumber::Bottom));
}

#[test]
fn hyper_roots_are_corner_roots() {
    let mut r = common::rng(40);
    for _ in 0..500 {
        let p = common::random_unipoly(&mut r, 10);
        let roots = roots_uni(&p);
        let mut candidates: Vec<Rational> = roots.entries.iter().filter_map(|e| e.root.finite().cloned()).collect();
        for _ in 0..10 {
            candidates.push(common::random_rational(&mut r, 15, 7));
        }
        for x in candidates {
            let x = TropicalNumber::Finite(x);
            let h = hyper_eval_uni(&p, &x);
            let is_root = roots.order_of(&x) > 0;
            assert_eq!(matches!(h, DownSet::ClosedRay(_)), is_root, "{p:?} at {x}");
            assert_eq!(h.contains_bottom(), is_root);
            assert_eq!(h.max(), &eval_uni(&p, &x));
        }
    }
}

#[test]
fn graph_with_tail_is_the_tropical_line() {
    let mut r = common::rng(41);
    let mut cases = vec![(int(0), int(0)), (int(2), int(-5))];
    for _ in 0..50 {
        cases.push((common::random_rational(&mut r, 10, 5), common::random_rational(&mut r, 10, 5)));
    }
    for (a, b) in cases {
        let graph = line_graph_with_tail(&a, &b);
        let line = tropical_curve(&BiPoly::from_terms(&[((0, 0), b.clone()), ((1, 0), a.clone()), ((0, 1), int(0))]));
        assert_eq!(graph.weighted_pieces(), line.weighted_pieces());
        assert!(check_balancing(&graph).unwrap().is_balanced());
    }
    let origin = line_graph_with_tail(&int(0), &int(0));
    assert_eq!(origin.vertices[0].position, Point::from_ints(0, 0));
}
