//! Exact planar primitives: lattice points, primitive directions, rational
//! points and lattice polygons.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::number::{int, Rational};

/// A point of `Z²`, used for exponents `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const fn new(i: i64, j: i64) -> Self {
        LatticePoint { i, j }
    }

    pub fn sub(self, other: LatticePoint) -> (i64, i64) {
        (self.i - other.i, self.j - other.j)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Cross product of `b - a` and `c - a`; positive for a left turn.
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = c.sub(a);
    ux * vy - uy * vx
}

/// Lattice length of the segment `[a, b]`: the number of lattice points on it minus one.
pub fn lattice_length(a: LatticePoint, b: LatticePoint) -> u64 {
    let (dx, dy) = b.sub(a);
    dx.unsigned_abs().gcd(&dy.unsigned_abs())
}

/// A nonzero integer vector with coprime coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction {
    pub dx: i64,
    pub dy: i64,
}

impl Direction {
    /// Wraps `(dx, dy)` if it is primitive.
    pub fn new(dx: i64, dy: i64) -> Option<Direction> {
        let d = Direction { dx, dy };
        d.is_primitive().then_some(d)
    }

    /// Divides out the gcd; `None` for the zero vector.
    pub fn primitive(dx: i64, dy: i64) -> Option<Direction> {
        let g = dx.unsigned_abs().gcd(&dy.unsigned_abs());
        if g == 0 {
            return None;
        }
        let g = g as i64;
        Some(Direction { dx: dx / g, dy: dy / g })
    }

    /// Primitive direction of a rational vector.
    pub fn of_rational(vx: &Rational, vy: &Rational) -> Option<Direction> {
        if vx.is_zero() && vy.is_zero() {
            return None;
        }
        // scale both coordinates to integers by the lcm of denominators
        let l = vx.denom().lcm(vy.denom());
        let ix = (vx * Rational::from_integer(l.clone())).to_integer();
        let iy = (vy * Rational::from_integer(l)).to_integer();
        let g = ix.gcd(&iy);
        let ix: i64 = (&ix / &g).try_into().ok()?;
        let iy: i64 = (&iy / &g).try_into().ok()?;
        Some(Direction { dx: ix, dy: iy })
    }

    pub fn is_primitive(&self) -> bool {
        self.dx.unsigned_abs().gcd(&self.dy.unsigned_abs()) == 1
    }

    pub fn neg(self) -> Direction {
        Direction { dx: -self.dx, dy: -self.dy }
    }

    pub fn det(self, other: Direction) -> i64 {
        self.dx * other.dy - self.dy * other.dx
    }

    pub fn dot(self, dx: i64, dy: i64) -> i64 {
        self.dx * dx + self.dy * dy
    }

    pub fn is_parallel(self, other: Direction) -> bool {
        self.det(other) == 0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

/// A point of `Q²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: int(x), y: int(y) }
    }

    /// `self + s·d`.
    pub fn offset(&self, d: Direction, s: &Rational) -> Point {
        Point { x: &self.x + s * int(d.dx), y: &self.y + s * int(d.dy) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            crate::number::format_rational(&self.x),
            crate::number::format_rational(&self.y)
        )
    }
}

/// Convex hull of lattice points, counter-clockwise, corners only.
///
/// Degenerate inputs yield one point (all equal) or the two extreme points
/// (all collinear).
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

/// Twice the signed area of a polygon (positive when counter-clockwise).
pub fn twice_area(polygon: &[LatticePoint]) -> i64 {
    let n = polygon.len();
    if n < 3 {
        return 0;
    }
    (0..n)
        .map(|k| {
            let a = polygon[k];
            let b = polygon[(k + 1) % n];
            a.i * b.j - a.j * b.i
        })
        .sum()
}

/// Whether `p` lies in the closed convex polygon given counter-clockwise.
pub fn polygon_contains(polygon: &[LatticePoint], p: LatticePoint) -> bool {
    match polygon.len() {
        0 => false,
        1 => polygon[0] == p,
        2 => on_segment(polygon[0], polygon[1], p),
        n => (0..n).all(|k| orient(polygon[k], polygon[(k + 1) % n], p) >= 0),
    }
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    orient(a, b, p) == 0
        && p.i >= a.i.min(b.i)
        && p.i <= a.i.max(b.i)
        && p.j >= a.j.min(b.j)
        && p.j <= a.j.max(b.j)
}

/// Cross product of two rational vectors.
pub fn cross(ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Rational {
    ax * by - ay * bx
}

/// Absolute value helper for rationals.
pub fn abs(q: &Rational) -> Rational {
    q.abs()
}
