//! Transverse and stable intersections of tropical curves.
//!
//! Stable intersection translates the second curve by `ε·v` for an
//! infinitesimal `ε > 0` and a direction `v` parallel to no edge of either
//! curve. Crossing parameters are then exactly linear in `ε`, so every
//! comparison is a lexicographic comparison of `(constant, ε-coefficient)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::bipoly::BiPoly;
use crate::curve::{tropical_curve, EdgeGeometry, EdgeKind, TropicalCurve};
use crate::error::{IntersectError, NonTransverseReason};
use crate::geometry::{cross, Direction, Point};
use crate::number::{int, Rational};

/// An element `c + e·ε` of `Q[ε]/(ε²)` with `ε` a positive infinitesimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsRational {
    pub constant: Rational,
    pub slope: Rational,
}

impl EpsRational {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        EpsRational { constant, slope }
    }

    pub fn constant(c: Rational) -> Self {
        EpsRational { constant: c, slope: Rational::zero() }
    }

    /// Value after substituting a concrete `ε`.
    pub fn at(&self, eps: &Rational) -> Rational {
        &self.constant + &self.slope * eps
    }
}

impl PartialOrd for EpsRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EpsRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.constant.cmp(&other.constant).then_with(|| self.slope.cmp(&other.slope))
    }
}

/// A point of the plane over `Q[ε]/(ε²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsPoint {
    pub x: EpsRational,
    pub y: EpsRational,
}

impl EpsPoint {
    /// The `ε → 0` limit.
    pub fn limit(&self) -> Point {
        Point::new(self.x.constant.clone(), self.y.constant.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntersectionKind {
    /// An isolated crossing in the interior of an edge of each curve.
    Transverse,
    /// The limit of one or more crossings of the translated curves.
    StableLimit,
}

impl IntersectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IntersectionKind::Transverse => "transverse",
            IntersectionKind::StableLimit => "stable-limit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionPoint {
    pub point: Point,
    pub multiplicity: u64,
    pub kind: IntersectionKind,
    /// Contributing `(edge of C1, edge of C2)` pairs, by unified edge id.
    pub witnesses: Vec<(usize, usize)>,
}

/// Total multiplicity of a list of intersection points.
pub fn total_multiplicity(points: &[IntersectionPoint]) -> u64 {
    points.iter().map(|p| p.multiplicity).sum()
}

fn crossing_multiplicity(a: &EdgeGeometry, b: &EdgeGeometry) -> u64 {
    a.weight * b.weight * a.direction.det(b.direction).unsigned_abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Outside,
    Endpoint,
    Interior,
}

fn place(kind: EdgeKind, s: &Rational) -> Place {
    let zero = Rational::zero();
    let one = Rational::one();
    match kind {
        EdgeKind::Line => Place::Interior,
        EdgeKind::Ray => match s.cmp(&zero) {
            Ordering::Less => Place::Outside,
            Ordering::Equal => Place::Endpoint,
            Ordering::Greater => Place::Interior,
        },
        EdgeKind::Bounded => {
            if *s < zero || *s > one {
                Place::Outside
            } else if *s == zero || *s == one {
                Place::Endpoint
            } else {
                Place::Interior
            }
        }
    }
}

fn place_eps(kind: EdgeKind, s: &EpsRational) -> bool {
    let zero = EpsRational::constant(Rational::zero());
    let one = EpsRational::constant(Rational::one());
    match kind {
        EdgeKind::Line => true,
        EdgeKind::Ray => *s >= zero,
        EdgeKind::Bounded => *s >= zero && *s <= one,
    }
}

/// Parameters `(s, t)` with `a(s) = b(t)` for non-parallel pieces.
fn crossing_params(a: &EdgeGeometry, b: &EdgeGeometry) -> (Rational, Rational) {
    let (wx, wy) = (&b.base.x - &a.base.x, &b.base.y - &a.base.y);
    let d = cross(&a.span.0, &a.span.1, &b.span.0, &b.span.1);
    let s = cross(&wx, &wy, &b.span.0, &b.span.1) / &d;
    let t = cross(&wx, &wy, &a.span.0, &a.span.1) / &d;
    (s, t)
}

/// For parallel pieces: `None` if they are disjoint, `Some(true)` if they
/// share a segment of positive length, `Some(false)` if they touch at one point.
fn collinear_overlap(a: &EdgeGeometry, b: &EdgeGeometry) -> Option<bool> {
    let (wx, wy) = (&b.base.x - &a.base.x, &b.base.y - &a.base.y);
    if !cross(&wx, &wy, &a.span.0, &a.span.1).is_zero() {
        return None;
    }
    // parameterise b's range on a's line: a.base + s·a.span
    let norm = &a.span.0 * &a.span.0 + &a.span.1 * &a.span.1;
    let to_s = |p: &Point| ((&p.x - &a.base.x) * &a.span.0 + (&p.y - &a.base.y) * &a.span.1) / &norm;
    let b0 = to_s(&b.base);
    let step = (&b.span.0 * &a.span.0 + &b.span.1 * &a.span.1) / &norm;
    // interval endpoints as Option (None for infinite)
    let interval = |kind: EdgeKind, start: Rational, dir: Rational| -> (Option<Rational>, Option<Rational>) {
        match kind {
            EdgeKind::Line => (None, None),
            EdgeKind::Ray => {
                if dir.is_positive() {
                    (Some(start), None)
                } else {
                    (None, Some(start))
                }
            }
            EdgeKind::Bounded => {
                let end = &start + &dir;
                if start <= end {
                    (Some(start), Some(end))
                } else {
                    (Some(end), Some(start))
                }
            }
        }
    };
    let (alo, ahi) = interval(a.kind, Rational::zero(), Rational::one());
    let (blo, bhi) = interval(b.kind, b0, step);
    let lo = match (alo, blo) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    };
    let hi = match (ahi, bhi) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    };
    match (lo, hi) {
        (Some(l), Some(h)) if l > h => None,
        (Some(l), Some(h)) => Some(l < h),
        _ => Some(true),
    }
}

/// Crossings of two curves that meet only at interior points of edges.
pub fn transverse_intersections(c1: &TropicalCurve, c2: &TropicalCurve) -> Result<Vec<IntersectionPoint>, IntersectError> {
    let g1 = c1.edge_geometry();
    let g2 = c2.edge_geometry();
    let mut out = Vec::new();
    // overlaps are reported in preference to vertex contacts
    let mut vertex_contact = false;
    for a in &g1 {
        for b in &g2 {
            if a.direction.is_parallel(b.direction) {
                match collinear_overlap(a, b) {
                    None => {}
                    Some(true) => {
                        return Err(IntersectError::NonTransverse {
                            reason: NonTransverseReason::OverlappingParallelEdges,
                        })
                    }
                    Some(false) => vertex_contact = true,
                }
                continue;
            }
            let (s, t) = crossing_params(a, b);
            match (place(a.kind, &s), place(b.kind, &t)) {
                (Place::Outside, _) | (_, Place::Outside) => {}
                (Place::Interior, Place::Interior) => out.push(IntersectionPoint {
                    point: a.point_at(&s),
                    multiplicity: crossing_multiplicity(a, b),
                    kind: IntersectionKind::Transverse,
                    witnesses: vec![(a.id, b.id)],
                }),
                _ => vertex_contact = true,
            }
        }
    }
    if vertex_contact {
        return Err(IntersectError::NonTransverse { reason: NonTransverseReason::VertexOnCurve });
    }
    out.sort_by(|p, q| p.point.cmp(&q.point));
    Ok(out)
}

fn edge_directions(c: &TropicalCurve) -> Vec<Direction> {
    (0..c.edge_count()).filter_map(|k| c.edge_direction(k).map(|(d, _)| d)).collect()
}

/// Whether `v` is parallel to no edge of either curve.
pub fn is_admissible(c1: &TropicalCurve, c2: &TropicalCurve, v: (i64, i64)) -> bool {
    if v == (0, 0) {
        return false;
    }
    edge_directions(c1)
        .into_iter()
        .chain(edge_directions(c2))
        .all(|d| d.dx * v.1 - d.dy * v.0 != 0)
}

/// The first `n` admissible directions among `(1,1), (1,2), (1,3), …`.
pub fn admissible_directions(c1: &TropicalCurve, c2: &TropicalCurve, n: usize) -> Vec<(i64, i64)> {
    (1..).map(|k| (1, k)).filter(|&v| is_admissible(c1, c2, v)).take(n).collect()
}

/// Stable intersection using the default translation direction.
pub fn stable_intersections(c1: &TropicalCurve, c2: &TropicalCurve) -> Vec<IntersectionPoint> {
    let v = admissible_directions(c1, c2, 1)[0];
    stable_intersections_with_direction(c1, c2, v).expect("direction is admissible by construction")
}

/// Stable intersection translating `c2` by `ε·v`.
pub fn stable_intersections_with_direction(
    c1: &TropicalCurve,
    c2: &TropicalCurve,
    v: (i64, i64),
) -> Result<Vec<IntersectionPoint>, IntersectError> {
    if !is_admissible(c1, c2, v) {
        return Err(IntersectError::InadmissibleDirection(v.0, v.1));
    }
    let (vx, vy) = (int(v.0), int(v.1));
    let g1 = c1.edge_geometry();
    let g2 = c2.edge_geometry();
    let mut groups: BTreeMap<Point, IntersectionPoint> = BTreeMap::new();
    for a in &g1 {
        for b in &g2 {
            if a.direction.is_parallel(b.direction) {
                // translated parallel pieces lie on distinct lines
                continue;
            }
            let (s0, t0) = crossing_params(a, b);
            let d = cross(&a.span.0, &a.span.1, &b.span.0, &b.span.1);
            let s = EpsRational::new(s0.clone(), cross(&vx, &vy, &b.span.0, &b.span.1) / &d);
            let t = EpsRational::new(t0.clone(), cross(&vx, &vy, &a.span.0, &a.span.1) / &d);
            if !place_eps(a.kind, &s) || !place_eps(b.kind, &t) {
                continue;
            }
            let point = a.point_at(&s0);
            let interior = place(a.kind, &s0) == Place::Interior && place(b.kind, &t0) == Place::Interior;
            let m = crossing_multiplicity(a, b);
            let entry = groups.entry(point.clone()).or_insert_with(|| IntersectionPoint {
                point,
                multiplicity: 0,
                kind: if interior { IntersectionKind::Transverse } else { IntersectionKind::StableLimit },
                witnesses: Vec::new(),
            });
            if !entry.witnesses.is_empty() || !interior {
                entry.kind = IntersectionKind::StableLimit;
            }
            entry.multiplicity += m;
            entry.witnesses.push((a.id, b.id));
        }
    }
    Ok(groups.into_values().collect())
}

/// Tropical product of two polynomials and its curve `C1 ∪ C2`.
pub fn union_curve(p1: &BiPoly, p2: &BiPoly) -> (BiPoly, TropicalCurve) {
    let q = p1.mul(p2);
    let c = tropical_curve(&q);
    (q, c)
}

/// Euclidean area of the cell dual to the vertex of `c` at `point`.
pub fn dual_cell_area(c: &TropicalCurve, point: &Point) -> Option<Rational> {
    let sub = c.dual.as_ref()?;
    let v = c.vertices.iter().find(|v| v.position == *point)?;
    let cell = sub.cells.get(v.cell?)?;
    Some(Rational::new(cell.twice_area().into(), 2.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutReport {
    pub d1: u32,
    pub d2: u32,
    pub total: u64,
    pub ok: bool,
    pub points: Vec<IntersectionPoint>,
}

/// Compares the stable intersection count with `d1·d2`.
pub fn bezout_check(p1: &BiPoly, p2: &BiPoly) -> Result<BezoutReport, IntersectError> {
    for (name, p) in [("first", p1), ("second", p2)] {
        if !p.has_standard_support() {
            return Err(IntersectError::NonStandardSupport(format!(
                "the {name} polynomial lacks one of the corner monomials 1, x^d, y^d, so it has no degree in the required sense"
            )));
        }
    }
    let (d1, d2) = (p1.degree(), p2.degree());
    let points = stable_intersections(&tropical_curve(p1), &tropical_curve(p2));
    let total = total_multiplicity(&points);
    Ok(BezoutReport { d1, d2, total, ok: total == u64::from(d1) * u64::from(d2), points })
}
