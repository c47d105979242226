//! Regular subdivisions of Newton polygons.
//!
//! Each support point `(i, j)` is lifted to height `a_{i,j}`; the upper faces
//! of the convex hull of the lifted points project to the cells of the dual
//! subdivision. Facets are discovered by gift-wrapping: starting from a facet
//! on the boundary, the facet across each cell edge is the plane through that
//! edge tilted down just far enough to clear every point on the other side.
//! Everything is exact over `Q`.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::bipoly::BiPoly;
use crate::geometry::{convex_hull, lattice_length, twice_area, Direction, LatticePoint, Point};
use crate::number::{int, Rational};

/// An affine height function `h(i, j) = slope_i·i + slope_j·j + offset` on the exponent plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineLift {
    pub slope_i: Rational,
    pub slope_j: Rational,
    pub offset: Rational,
}

impl AffineLift {
    pub fn eval(&self, p: LatticePoint) -> Rational {
        &self.slope_i * int(p.i) + &self.slope_j * int(p.j) + &self.offset
    }

    /// The curve vertex dual to the cell carrying this lift: the point where
    /// all monomials of the cell take the same value.
    pub fn dual_point(&self) -> Point {
        Point::new(-self.slope_i.clone(), -self.slope_j.clone())
    }

    // self + lambda * (gi·i + gj·j + c)
    fn tilted(&self, lambda: &Rational, gi: i64, gj: i64, c: i64) -> AffineLift {
        AffineLift {
            slope_i: &self.slope_i + lambda * int(gi),
            slope_j: &self.slope_j + lambda * int(gj),
            offset: &self.offset + lambda * int(c),
        }
    }
}

/// A two-dimensional cell `Δ_v` of the subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    /// Corners, counter-clockwise.
    pub vertices: Vec<LatticePoint>,
    /// Every support point whose lift lies on the cell's facet (sorted).
    pub points: Vec<LatticePoint>,
    /// Height function of the facet, when known.
    pub lift: Option<AffineLift>,
}

impl Cell {
    pub fn twice_area(&self) -> i64 {
        twice_area(&self.vertices)
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }
}

/// A lattice segment `δ_e` of the subdivision.
///
/// `start → end` runs counter-clockwise around `left`. For an interior edge
/// `right` is the neighbouring cell and `length` is the positive rational `λ`
/// such that the dual curve edge goes from the vertex of `left` to the vertex
/// of `right` along `λ` times the primitive outward normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubdivisionEdge {
    pub start: LatticePoint,
    pub end: LatticePoint,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub length: Option<Rational>,
}

impl SubdivisionEdge {
    pub fn lattice_length(&self) -> u64 {
        lattice_length(self.start, self.end)
    }

    pub fn is_interior(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }

    /// Primitive normal pointing out of `left` (to the right of `start → end`).
    pub fn outward_normal(&self) -> Direction {
        let (dx, dy) = self.end.sub(self.start);
        Direction::primitive(dy, -dx).expect("edge has distinct endpoints")
    }

    /// Primitive direction along the segment.
    pub fn direction(&self) -> Direction {
        let (dx, dy) = self.end.sub(self.start);
        Direction::primitive(dx, dy).expect("edge has distinct endpoints")
    }
}

/// The regular subdivision of a Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualSubdivision {
    /// Corners of the Newton polygon, counter-clockwise.
    pub newton_polygon: Vec<LatticePoint>,
    pub cells: Vec<Cell>,
    pub edges: Vec<SubdivisionEdge>,
    /// The support of the polynomial.
    pub lattice_points: Vec<LatticePoint>,
    /// 2 for a genuine polygon; 1 when the support is collinear (cells are
    /// then the segments in `edges`); 0 for a single monomial.
    pub dimension: u8,
}

impl DualSubdivision {
    pub fn newton_twice_area(&self) -> i64 {
        twice_area(&self.newton_polygon)
    }

    pub fn cells_twice_area(&self) -> i64 {
        self.cells.iter().map(Cell::twice_area).sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.dimension < 2
    }

    /// The edge joining two lattice points, in either orientation.
    pub fn find_edge(&self, a: LatticePoint, b: LatticePoint) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.start == a && e.end == b) || (e.start == b && e.end == a))
    }

    /// Cell containing exactly these corners (any order).
    pub fn find_cell(&self, corners: &[LatticePoint]) -> Option<usize> {
        let mut want = corners.to_vec();
        want.sort();
        self.cells.iter().position(|c| {
            let mut have = c.vertices.clone();
            have.sort();
            have == want
        })
    }
}

/// Lifts the support by the coefficients and projects the upper hull.
pub fn dual_subdivision(p: &BiPoly) -> DualSubdivision {
    let lifted: Vec<(LatticePoint, Rational)> = p.terms().map(|(q, a)| (q, a.clone())).collect();
    let support: Vec<LatticePoint> = lifted.iter().map(|(q, _)| *q).collect();
    let polygon = convex_hull(&support);
    match polygon.len() {
        1 => DualSubdivision {
            newton_polygon: polygon,
            cells: Vec::new(),
            edges: Vec::new(),
            lattice_points: support,
            dimension: 0,
        },
        2 => segment_subdivision(&lifted, polygon, support),
        _ => polygon_subdivision(&lifted, polygon, support),
    }
}

/// Upper hull of `(t, h)` pairs sorted by `t`; returns indices into `pts`.
fn upper_chain(pts: &[(i64, &Rational)]) -> Vec<usize> {
    let mut chain: Vec<usize> = Vec::new();
    for k in 0..pts.len() {
        while chain.len() >= 2 {
            let (t0, h0) = pts[chain[chain.len() - 2]];
            let (t1, h1) = pts[chain[chain.len() - 1]];
            let (t2, h2) = pts[k];
            // keep the middle point only if strictly above the chord
            if (h1 - h0) * int(t2 - t0) <= (h2 - h0) * int(t1 - t0) {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(k);
    }
    chain
}

/// Support points on the segment `[a, b]`, ordered from `a`, with the
/// consecutive vertices of their one-dimensional upper hull.
fn segment_chain(lifted: &[(LatticePoint, Rational)], a: LatticePoint, b: LatticePoint) -> Vec<LatticePoint> {
    let (dx, dy) = b.sub(a);
    let mut on: Vec<(i64, LatticePoint, &Rational)> = lifted
        .iter()
        .filter(|(q, _)| crate::geometry::on_segment(a, b, *q))
        .map(|(q, h)| {
            let (qx, qy) = q.sub(a);
            (qx * dx + qy * dy, *q, h)
        })
        .collect();
    on.sort_by_key(|(t, _, _)| *t);
    let keyed: Vec<(i64, &Rational)> = on.iter().map(|(t, _, h)| (*t, *h)).collect();
    upper_chain(&keyed).into_iter().map(|k| on[k].1).collect()
}

fn segment_subdivision(
    lifted: &[(LatticePoint, Rational)],
    polygon: Vec<LatticePoint>,
    support: Vec<LatticePoint>,
) -> DualSubdivision {
    let chain = segment_chain(lifted, polygon[0], polygon[1]);
    let edges = chain
        .windows(2)
        .map(|w| SubdivisionEdge { start: w[0], end: w[1], left: None, right: None, length: None })
        .collect();
    DualSubdivision { newton_polygon: polygon, cells: Vec::new(), edges, lattice_points: support, dimension: 1 }
}

fn cell_on_plane(lifted: &[(LatticePoint, Rational)], lift: AffineLift) -> Cell {
    let mut points: Vec<LatticePoint> = lifted.iter().filter(|(q, h)| lift.eval(*q) == *h).map(|(q, _)| *q).collect();
    points.sort();
    debug_assert!(
        lifted.iter().all(|(q, h)| *h <= lift.eval(*q)),
        "facet plane must dominate every lifted point"
    );
    Cell { vertices: convex_hull(&points), points, lift: Some(lift) }
}

/// Tilts `base` about the line through `u` along the affine function
/// `g·(i,j) + c` (positive on the side to be cleared) until every lifted
/// point on that side is on or below it. `None` if the side is empty.
fn wrap(lifted: &[(LatticePoint, Rational)], base: &AffineLift, g: (i64, i64), c: i64) -> Option<AffineLift> {
    let mut best: Option<Rational> = None;
    for (q, h) in lifted {
        let side = g.0 * q.i + g.1 * q.j + c;
        if side <= 0 {
            continue;
        }
        let ratio = (h - base.eval(*q)) / int(side);
        if best.as_ref().is_none_or(|b| ratio > *b) {
            best = Some(ratio);
        }
    }
    best.map(|lambda| base.tilted(&lambda, g.0, g.1, c))
}

fn polygon_subdivision(
    lifted: &[(LatticePoint, Rational)],
    polygon: Vec<LatticePoint>,
    support: Vec<LatticePoint>,
) -> DualSubdivision {
    let heights: BTreeMap<LatticePoint, &Rational> = lifted.iter().map(|(q, h)| (*q, h)).collect();

    // first facet: the one above the first lattice edge on the boundary
    let chain = segment_chain(lifted, polygon[0], polygon[1]);
    let (p, q) = (chain[0], chain[1]);
    let (dx, dy) = q.sub(p);
    let norm2 = int(dx * dx + dy * dy);
    let rise = (heights[&q] - heights[&p]) / norm2;
    let along = AffineLift {
        slope_i: &rise * int(dx),
        slope_j: &rise * int(dy),
        offset: heights[&p].clone() - &rise * int(dx * p.i + dy * p.j),
    };
    // cross(q - p, s - p) > 0 on the interior side
    let first = wrap(lifted, &along, (-dy, dx), dy * p.i - dx * p.j).expect("two-dimensional support");

    let mut cells: Vec<Cell> = Vec::new();
    let mut cell_index: BTreeMap<Vec<LatticePoint>, usize> = BTreeMap::new();
    let mut edges: Vec<SubdivisionEdge> = Vec::new();
    let mut edge_index: BTreeMap<(LatticePoint, LatticePoint), usize> = BTreeMap::new();
    let mut queue = VecDeque::new();

    let start = cell_on_plane(lifted, first);
    cell_index.insert(start.vertices.clone(), 0);
    cells.push(start);
    queue.push_back(0);

    while let Some(ci) = queue.pop_front() {
        let corners = cells[ci].vertices.clone();
        let lift = cells[ci].lift.clone().expect("computed cells carry a lift");
        for k in 0..corners.len() {
            let (u, v) = (corners[k], corners[(k + 1) % corners.len()]);
            let key = if u < v { (u, v) } else { (v, u) };
            if edge_index.contains_key(&key) {
                continue;
            }
            let (dx, dy) = v.sub(u);
            // -cross(v - u, s - u) > 0 on the far side
            let far = wrap(lifted, &lift, (dy, -dx), dx * u.j - dy * u.i);
            let edge = match far {
                None => SubdivisionEdge { start: u, end: v, left: Some(ci), right: None, length: None },
                Some(next) => {
                    let cell = cell_on_plane(lifted, next);
                    debug_assert!(cell.points.contains(&u) && cell.points.contains(&v));
                    let ni = match cell_index.get(&cell.vertices) {
                        Some(&ni) => ni,
                        None => {
                            let ni = cells.len();
                            cell_index.insert(cell.vertices.clone(), ni);
                            cells.push(cell);
                            queue.push_back(ni);
                            ni
                        }
                    };
                    let here = lift.dual_point();
                    let there = cells[ni].lift.as_ref().expect("lift").dual_point();
                    let normal = Direction::primitive(dy, -dx).expect("nonzero edge");
                    let length = if normal.dx != 0 {
                        (&there.x - &here.x) / int(normal.dx)
                    } else {
                        (&there.y - &here.y) / int(normal.dy)
                    };
                    debug_assert!(length > Rational::zero());
                    SubdivisionEdge { start: u, end: v, left: Some(ci), right: Some(ni), length: Some(length) }
                }
            };
            edge_index.insert(key, edges.len());
            edges.push(edge);
        }
    }

    debug_assert_eq!(
        cells.iter().map(Cell::twice_area).sum::<i64>(),
        twice_area(&polygon),
        "cells must tile the Newton polygon"
    );
    DualSubdivision { newton_polygon: polygon, cells, edges, lattice_points: support, dimension: 2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    fn lp(i: i64, j: i64) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    #[test]
    fn line_has_one_triangle() {
        let p = BiPoly::from_terms(&[((0, 0), rat(1, 2)), ((1, 0), rat(2, 1)), ((0, 1), rat(-5, 1))]);
        let s = dual_subdivision(&p);
        assert_eq!(s.dimension, 2);
        assert_eq!(s.cells.len(), 1);
        assert!(s.find_cell(&[lp(0, 0), lp(1, 0), lp(0, 1)]).is_some());
        assert_eq!(s.edges.len(), 3);
        assert!(s.edges.iter().all(|e| !e.is_interior()));
    }

    #[test]
    fn smooth_conic_has_four_triangles() {
        let p = BiPoly::from_ints(&[((0, 0), 3), ((1, 0), 2), ((0, 1), 2), ((1, 1), 3), ((2, 0), 0), ((0, 2), 0)]);
        let s = dual_subdivision(&p);
        assert_eq!(s.cells.len(), 4);
        assert!(s.cells.iter().all(Cell::is_triangle));
        assert_eq!(s.cells_twice_area(), 4);
        assert_eq!(s.edges.iter().filter(|e| e.is_interior()).count(), 3);
    }

    #[test]
    fn weight_two_conic_keeps_collinear_segment() {
        let p = BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((0, 2), 0), ((2, 0), -1)]);
        let s = dual_subdivision(&p);
        let e = s.find_edge(lp(0, 0), lp(0, 2)).expect("segment through (0,1)");
        assert_eq!(s.edges[e].lattice_length(), 2);
        let with_mid = s.cells.iter().find(|c| c.points.contains(&lp(0, 1))).unwrap();
        assert!(!with_mid.vertices.contains(&lp(0, 1)));
        assert_eq!(s.cells_twice_area(), 4);
    }

    #[test]
    fn non_generic_lift_keeps_square() {
        let p = BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 0)]);
        let s = dual_subdivision(&p);
        assert_eq!(s.cells.len(), 1);
        assert_eq!(s.cells[0].vertices.len(), 4);
    }

    #[test]
    fn collinear_support_is_flagged() {
        let p = BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 5), ((2, 0), 0)]);
        let s = dual_subdivision(&p);
        assert_eq!(s.dimension, 1);
        assert_eq!(s.edges.len(), 2);
        let single = dual_subdivision(&BiPoly::from_ints(&[((1, 1), 0)]));
        assert_eq!(single.dimension, 0);
        assert!(single.edges.is_empty());
    }
}
