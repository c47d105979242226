//! Polynomial evaluation over the tropical hyperfield.

use crate::curve::{CurveVertex, Ray, TropicalCurve};
use crate::geometry::{Direction, Point};
use crate::number::{DownSet, Rational, TropicalNumber};
use crate::univariate::UniPoly;

/// Folds the monomial values `a_i + i·x` with the multivalued addition.
///
/// The result is `Singleton(max)` when one monomial dominates and
/// `ClosedRay(max)` when the maximum is attained at least twice.
pub fn hyper_eval_uni(p: &UniPoly, x: &TropicalNumber) -> DownSet {
    let mut values = p.monomial_values(x).map(|(_, v)| v);
    let first = values.next().expect("polynomial has a finite coefficient");
    values.fold(DownSet::Singleton(first), |acc, v| acc.hyper_add_element(&v))
}

/// Whether the hyperfield value at `x` contains `-∞`.
pub fn is_hyper_root(p: &UniPoly, x: &TropicalNumber) -> bool {
    hyper_eval_uni(p, x).contains_bottom()
}

/// The multivalued graph `{(x, y) : y ∈ (a + x) ⊞ b}`: the graph of
/// `max(a + x, b)` with a vertical tail going down at `x = b - a`.
pub fn line_graph_with_tail(a: &Rational, b: &Rational) -> TropicalCurve {
    let corner = Point::new(b - a, b.clone());
    let ray = |dx, dy| Ray { base: 0, direction: Direction { dx, dy }, weight: 1, dual: None };
    TropicalCurve {
        vertices: vec![CurveVertex { position: corner, cell: None }],
        rays: vec![ray(-1, 0), ray(1, 1), ray(0, -1)],
        ..TropicalCurve::default()
    }
}
