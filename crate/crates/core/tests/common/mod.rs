#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropica::curve::EdgeKind;
use tropica::geometry::{on_segment, LatticePoint};
use tropica::number::{int, rat};
use tropica::patchwork::{QuadrantCopy, QUADRANTS};
use tropica::{BiPoly, Point, Rational, TropicalCurve, TropicalNumber, UniPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `[-range, range]` and denominator in `1..=den`.
pub fn random_rational(r: &mut ChaCha8Rng, range: i64, den: i64) -> Rational {
    let q = r.random_range(1..=den);
    rat(r.random_range(-range * q..=range * q), q)
}

pub fn random_tropical(r: &mut ChaCha8Rng) -> TropicalNumber {
    if r.random_bool(0.1) {
        TropicalNumber::Bottom
    } else {
        TropicalNumber::Finite(random_rational(r, 20, 6))
    }
}

/// Random polynomial of degree `1..=max_degree`; each exponent present with probability 0.6.
pub fn random_unipoly(r: &mut ChaCha8Rng, max_degree: u32) -> UniPoly {
    let d = r.random_range(1..=max_degree);
    let mut terms = vec![(d, TropicalNumber::Finite(random_rational(r, 10, 4)))];
    for i in 0..d {
        if r.random_bool(0.6) {
            terms.push((i, TropicalNumber::Finite(random_rational(r, 10, 4))));
        }
    }
    UniPoly::new(terms).expect("finite leading term")
}

/// Random polynomial with support inside `Δ_d` containing the three corners,
/// so its Newton polygon is exactly `Δ_d`.
pub fn random_bipoly(r: &mut ChaCha8Rng, d: u32) -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            let corner = (i, j) == (0, 0) || (i, j) == (d, 0) || (i, j) == (0, d);
            if corner || r.random_bool(0.7) {
                terms.push(((i, j), random_rational(r, 12, 3)));
            }
        }
    }
    BiPoly::from_terms(&terms)
}

/// Full-support polynomial with large random integer coefficients; almost
/// always induces a unimodular triangulation.
pub fn generic_bipoly(r: &mut ChaCha8Rng, d: u32) -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            terms.push(((i, j), int(r.random_range(-1000..=1000))));
        }
    }
    BiPoly::from_terms(&terms)
}

pub fn random_point(r: &mut ChaCha8Rng) -> Point {
    Point::new(random_rational(r, 15, 7), random_rational(r, 15, 7))
}

// ---------------------------------------------------------------- fixtures

pub fn line_fixture() -> BiPoly {
    // "1/2 + 2x + (-5)y"
    BiPoly::from_terms(&[((0, 0), rat(1, 2)), ((1, 0), int(2)), ((0, 1), int(-5))])
}

/// The line `max(0, x - px, y - py)` with vertex `(px, py)`.
pub fn line_at(px: i64, py: i64) -> BiPoly {
    BiPoly::from_ints(&[((0, 0), 0), ((1, 0), -px), ((0, 1), -py)])
}

/// "3+2x+2y+3xy+x²+y²"
pub fn smooth_conic() -> BiPoly {
    BiPoly::from_ints(&[((0, 0), 3), ((1, 0), 2), ((0, 1), 2), ((1, 1), 3), ((2, 0), 0), ((0, 2), 0)])
}

/// "0+x+y+y²+(-1)x²"
pub fn weighted_conic() -> BiPoly {
    BiPoly::from_ints(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((0, 2), 0), ((2, 0), -1)])
}

/// Cubic with coefficients `-(i² + ij + j²)`: a unimodular triangulation of `Δ_3`.
pub fn hexagonal_cubic() -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=3i64 {
        for j in 0..=(3 - i) {
            terms.push(((i as u32, j as u32), -(i * i + i * j + j * j)));
        }
    }
    BiPoly::from_ints(&terms)
}

// ------------------------------------------------------------------ oracles

/// Roots found by scanning all pairwise breakpoints of the monomials.
pub fn breakpoint_roots(p: &UniPoly) -> BTreeMap<TropicalNumber, u32> {
    let terms: Vec<(u32, Rational)> = p.terms().map(|(i, a)| (i, a.clone())).collect();
    let mut out = BTreeMap::new();
    let low = terms.iter().map(|t| t.0).min().unwrap();
    if low > 0 {
        out.insert(TropicalNumber::Bottom, low);
    }
    for (a, (i, ai)) in terms.iter().enumerate() {
        for (j, aj) in &terms[a + 1..] {
            let x = (ai - aj) / int(i64::from(*j) - i64::from(*i));
            let vals: Vec<(u32, Rational)> = terms.iter().map(|(k, ak)| (*k, ak + &x * int(i64::from(*k)))).collect();
            let top = vals.iter().map(|v| v.1.clone()).max().unwrap();
            let attaining: Vec<u32> = vals.iter().filter(|v| v.1 == top).map(|v| v.0).collect();
            if attaining.len() >= 2 {
                let order = attaining.iter().max().unwrap() - attaining.iter().min().unwrap();
                out.insert(TropicalNumber::Finite(x), order);
            }
        }
    }
    out
}

/// Value of the concave majorant of `(i, a_i)` at every integer between
/// the extreme exponents, by maximising over all chords.
pub fn chord_majorant(p: &UniPoly) -> BTreeMap<u32, Rational> {
    let terms: Vec<(u32, Rational)> = p.terms().map(|(i, a)| (i, a.clone())).collect();
    let lo = terms.iter().map(|t| t.0).min().unwrap();
    let hi = terms.iter().map(|t| t.0).max().unwrap();
    let mut out = BTreeMap::new();
    for k in lo..=hi {
        let mut best: Option<Rational> = None;
        for (i, ai) in &terms {
            for (j, aj) in &terms {
                if i <= &k && &k <= j {
                    let v = if i == j {
                        ai.clone()
                    } else {
                        (ai * int(i64::from(j - k)) + aj * int(i64::from(k - i))) / int(i64::from(j - i))
                    };
                    if best.as_ref().is_none_or(|b| &v > b) {
                        best = Some(v);
                    }
                }
            }
        }
        out.insert(k, best.unwrap());
    }
    out
}

/// Tropical product by direct convolution.
pub fn convolve(p: &UniPoly, q: &UniPoly) -> BTreeMap<u32, Rational> {
    let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
    for (i, a) in p.terms() {
        for (j, b) in q.terms() {
            let v = a + b;
            let e = out.entry(i + j).or_insert_with(|| v.clone());
            if v > *e {
                *e = v;
            }
        }
    }
    out
}

pub fn uni_terms(p: &UniPoly) -> BTreeMap<u32, Rational> {
    p.terms().map(|(i, a)| (i, a.clone())).collect()
}

/// Integer points on the closed segment, by scanning its bounding box.
pub fn lattice_count(a: LatticePoint, b: LatticePoint) -> u64 {
    let mut n = 0;
    for i in a.i.min(b.i)..=a.i.max(b.i) {
        for j in a.j.min(b.j)..=a.j.max(b.j) {
            if on_segment(a, b, LatticePoint::new(i, j)) {
                n += 1;
            }
        }
    }
    n
}

/// Whether `p` lies on some edge, ray or line of the curve, checked by solving
/// for the edge parameter.
pub fn lies_on_curve(c: &TropicalCurve, p: &Point) -> bool {
    c.edge_geometry().iter().any(|g| {
        let (wx, wy) = (&p.x - &g.base.x, &p.y - &g.base.y);
        if !(&wx * &g.span.1 - &wy * &g.span.0).is_zero() {
            return false;
        }
        let s = if !g.span.0.is_zero() { &wx / &g.span.0 } else { &wy / &g.span.1 };
        match g.kind {
            EdgeKind::Bounded => !s.is_negative() && s <= Rational::from_integer(1.into()),
            EdgeKind::Ray => !s.is_negative(),
            EdgeKind::Line => true,
        }
    })
}

/// Crossings of `c1` with `c2` translated by `eps·v`, computed with a
/// concrete rational `eps`. Returns `(point, multiplicity)` for each crossing.
pub fn explicit_eps_crossings(c1: &TropicalCurve, c2: &TropicalCurve, v: (i64, i64), eps: &Rational) -> Vec<(Point, u64)> {
    let moved = c2.translated(&(eps * int(v.0)), &(eps * int(v.1)));
    let g1 = c1.edge_geometry();
    let g2 = moved.edge_geometry();
    let mut out = Vec::new();
    for a in &g1 {
        for b in &g2 {
            let det = &a.span.0 * &b.span.1 - &a.span.1 * &b.span.0;
            if det.is_zero() {
                continue;
            }
            // a.base + s·a.span = b.base + t·b.span
            let (wx, wy) = (&b.base.x - &a.base.x, &b.base.y - &a.base.y);
            let s = (&wx * &b.span.1 - &wy * &b.span.0) / &det;
            let t = (&wx * &a.span.1 - &wy * &a.span.0) / &det;
            let inside = |kind: EdgeKind, u: &Rational| match kind {
                EdgeKind::Bounded => u.is_positive() && *u < Rational::from_integer(1.into()),
                EdgeKind::Ray => u.is_positive(),
                EdgeKind::Line => true,
            };
            let touches = |kind: EdgeKind, u: &Rational| match kind {
                EdgeKind::Bounded => u.is_zero() || *u == Rational::from_integer(1.into()),
                EdgeKind::Ray => u.is_zero(),
                EdgeKind::Line => false,
            };
            assert!(
                !((touches(a.kind, &s) && (inside(b.kind, &t) || touches(b.kind, &t)))
                    || (touches(b.kind, &t) && inside(a.kind, &s))),
                "explicit perturbation is not generic"
            );
            if inside(a.kind, &s) && inside(b.kind, &t) {
                let m = (a.direction.det(b.direction)).unsigned_abs() * a.weight * b.weight;
                out.push((a.point_at(&s), m));
            }
        }
    }
    out
}

/// Squared Euclidean distance, in doubles.
pub fn dist2(p: &Point, q: &Point) -> f64 {
    let (a, b) = (p.to_f64(), q.to_f64());
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

/// Lattice points of the dual segment of each edge, by unified edge id.
pub fn dual_endpoints(c: &TropicalCurve) -> Vec<(LatticePoint, LatticePoint)> {
    let sub = c.dual.as_ref().expect("curve carries its subdivision");
    let mut out = Vec::new();
    for e in &c.edges {
        let d = &sub.edges[e.dual.expect("dual index")];
        out.push((d.start, d.end));
    }
    for r in &c.rays {
        let d = &sub.edges[r.dual.expect("dual index")];
        out.push((d.start, d.end));
    }
    out
}

/// Survivor sets produced by every sign distribution on the support: a copy
/// of an edge survives in a quadrant iff the two dual monomials take opposite
/// signs there.
pub fn sign_distribution_patchworks(c: &TropicalCurve) -> BTreeSet<BTreeSet<QuadrantCopy>> {
    let sub = c.dual.as_ref().expect("curve carries its subdivision");
    let points: Vec<LatticePoint> = sub.lattice_points.clone();
    let duals = dual_endpoints(c);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << points.len()) {
        let sign_of = |p: LatticePoint, q: (u8, u8)| {
            let k = points.iter().position(|x| *x == p).expect("support point");
            let base = (mask >> k) & 1;
            let flip = (p.i * i64::from(q.0) + p.j * i64::from(q.1)).rem_euclid(2) as u32;
            base ^ flip
        };
        let mut set = BTreeSet::new();
        for (edge, (a, b)) in duals.iter().enumerate() {
            for q in QUADRANTS {
                if sign_of(*a, q) != sign_of(*b, q) {
                    set.insert(QuadrantCopy { edge, quadrant: q });
                }
            }
        }
        out.insert(set);
    }
    out
}

/// Checks the two erasure rules directly: each edge keeps two copies that
/// are mirror images under its parity reflection, and every vertex copy
/// keeps 0 or 2 incident edges.
pub fn erasure_rules_hold(c: &TropicalCurve, survivors: &BTreeSet<QuadrantCopy>) -> bool {
    let n = c.edge_count();
    for e in 0..n {
        let qs: Vec<(u8, u8)> = survivors.iter().filter(|s| s.edge == e).map(|s| s.quadrant).collect();
        if qs.len() != 2 {
            return false;
        }
        let (d, _) = c.edge_direction(e).unwrap();
        let mirror = ((qs[0].0 as i64 + d.dx).rem_euclid(2) as u8, (qs[0].1 as i64 + d.dy).rem_euclid(2) as u8);
        if mirror != qs[1] {
            return false;
        }
    }
    let ne = c.edges.len();
    for v in 0..c.vertices.len() {
        let incident: Vec<usize> = c
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.from == v || e.to == v)
            .map(|(k, _)| k)
            .chain(c.rays.iter().enumerate().filter(|(_, r)| r.base == v).map(|(k, _)| ne + k))
            .collect();
        for q in QUADRANTS {
            let kept = incident.iter().filter(|e| survivors.contains(&QuadrantCopy { edge: **e, quadrant: q })).count();
            if kept != 0 && kept != 2 {
                return false;
            }
        }
    }
    true
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().expect("finite rational")
}
