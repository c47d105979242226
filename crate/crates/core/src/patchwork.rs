//! Combinatorial patchworking of tropical curves.
//!
//! Each edge `e` of a curve with primitive direction `(α, β)` is copied into
//! the four sign quadrants `(ε₁, ε₂) ∈ {0,1}²`. A real tropical curve keeps two
//! copies of every edge, in quadrants that differ by `(α, β) mod 2`, such that
//! every vertex copy keeps zero or two of its three incident edge copies.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::curve::TropicalCurve;
use crate::error::PatchworkError;
use crate::geometry::{Direction, Point};
use crate::number::Rational;

/// A sign quadrant `(ε₁, ε₂)`; `1` means the coordinate is negative.
pub type Quadrant = (u8, u8);

pub const QUADRANTS: [Quadrant; 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn flip(q: Quadrant, d: Direction) -> Quadrant {
    (q.0 ^ (d.dx.rem_euclid(2) as u8), q.1 ^ (d.dy.rem_euclid(2) as u8))
}

/// The two admissible survivor pairs of an edge with direction `d`; pair 0
/// contains quadrant `(0, 0)`.
pub fn quadrant_pairs(d: Direction) -> [[Quadrant; 2]; 2] {
    let mate = flip((0, 0), d);
    let other = QUADRANTS.into_iter().find(|&q| q != (0, 0) && q != mate).expect("four quadrants");
    let mut first = [(0, 0), mate];
    let mut second = [other, flip(other, d)];
    first.sort();
    second.sort();
    [first, second]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadrantCopy {
    /// Unified edge id: bounded edges, then rays.
    pub edge: usize,
    pub quadrant: Quadrant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleViolation {
    /// The edge does not keep exactly two copies.
    CopyCount { edge: usize, count: usize },
    /// The two kept copies are not related by the edge's reflection.
    Pairing { edge: usize, quadrants: [Quadrant; 2] },
    /// A vertex copy keeps a number of incident edges other than 0 or 2.
    Vertex { vertex: usize, quadrant: Quadrant, survivors: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<RuleViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A tropical curve together with its surviving quadrant copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTropicalCurve {
    pub source: TropicalCurve,
    pub survivors: BTreeSet<QuadrantCopy>,
    /// Pairs of surviving ray copies joined across a coordinate axis.
    pub gluings: Vec<(QuadrantCopy, QuadrantCopy)>,
}

impl RealTropicalCurve {
    /// Wraps a survivor set after checking the preconditions and ids.
    /// The erasure rules are not enforced here; see [`patchwork_validate`].
    pub fn new(source: TropicalCurve, survivors: impl IntoIterator<Item = QuadrantCopy>) -> Result<Self, PatchworkError> {
        check_preconditions(&source)?;
        let survivors: BTreeSet<QuadrantCopy> = survivors.into_iter().collect();
        for s in &survivors {
            if s.edge >= source.edge_count() {
                return Err(PatchworkError::UnknownEdge(s.edge));
            }
            if s.quadrant.0 > 1 || s.quadrant.1 > 1 {
                return Err(PatchworkError::BadQuadrant(s.quadrant.0, s.quadrant.1));
            }
        }
        let ne = source.edges.len();
        let gluings = source
            .rays
            .iter()
            .enumerate()
            .filter(|(_, r)| glues(r.direction))
            .flat_map(|(k, r)| {
                let edge = ne + k;
                QUADRANTS.into_iter().filter_map(move |q| {
                    let mate = flip(q, r.direction);
                    (q < mate).then_some((QuadrantCopy { edge, quadrant: q }, QuadrantCopy { edge, quadrant: mate }))
                })
            })
            .filter(|(a, b)| survivors.contains(a) && survivors.contains(b))
            .collect();
        Ok(RealTropicalCurve { source, survivors, gluings })
    }

    /// Surviving quadrants of each edge, indexed by unified edge id.
    pub fn by_edge(&self) -> Vec<Vec<Quadrant>> {
        let mut out = vec![Vec::new(); self.source.edge_count()];
        for s in &self.survivors {
            out[s.edge].push(s.quadrant);
        }
        out
    }
}

// A ray reaches a coordinate axis at a finite point in the classical picture
// exactly when it has no positive component.
fn glues(d: Direction) -> bool {
    d.dx <= 0 && d.dy <= 0
}

fn check_preconditions(c: &TropicalCurve) -> Result<(), PatchworkError> {
    if !c.lines.is_empty() {
        return Err(PatchworkError::DegenerateCurve);
    }
    for k in 0..c.edge_count() {
        let (_, w) = c.edge_direction(k).expect("id in range");
        if w % 2 == 0 {
            return Err(PatchworkError::EvenWeight { edge: k, weight: w });
        }
    }
    let incidence = c.incidence();
    for (v, vertex) in c.vertices.iter().enumerate() {
        let triangle = match (vertex.cell, &c.dual) {
            (Some(cell), Some(sub)) => sub.cells.get(cell).is_some_and(|cell| cell.is_triangle()),
            _ => incidence[v].len() == 3,
        };
        if !triangle {
            return Err(PatchworkError::NonTriangularCell { vertex: v, valence: incidence[v].len() });
        }
    }
    Ok(())
}

fn directions(c: &TropicalCurve) -> Vec<Direction> {
    (0..c.edge_count()).map(|k| c.edge_direction(k).expect("id in range").0).collect()
}

/// Checks the pairing rule on every edge and the parity rule on every vertex copy.
pub fn patchwork_validate(c: &TropicalCurve, survivors: &[QuadrantCopy]) -> Result<ValidationReport, PatchworkError> {
    let real = RealTropicalCurve::new(c.clone(), survivors.iter().copied())?;
    let dirs = directions(c);
    let kept = real.by_edge();
    let mut violations = Vec::new();
    for (edge, qs) in kept.iter().enumerate() {
        if qs.len() != 2 {
            violations.push(RuleViolation::CopyCount { edge, count: qs.len() });
        } else if flip(qs[0], dirs[edge]) != qs[1] {
            violations.push(RuleViolation::Pairing { edge, quadrants: [qs[0], qs[1]] });
        }
    }
    for (vertex, incident) in c.incidence().iter().enumerate() {
        for quadrant in QUADRANTS {
            let n = incident.iter().filter(|(e, _)| kept[*e].contains(&quadrant)).count();
            if n != 0 && n != 2 {
                violations.push(RuleViolation::Vertex { vertex, quadrant, survivors: n });
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// All valid real tropical curves over `c`, up to `limit` of them.
///
/// Edges are assigned in id order, pairing 0 before pairing 1, and a vertex
/// is checked as soon as its last incident edge is assigned.
pub fn patchwork_enumerate(c: &TropicalCurve, limit: usize) -> Result<Vec<RealTropicalCurve>, PatchworkError> {
    check_preconditions(c)?;
    let dirs = directions(c);
    let n = dirs.len();
    let incidence = c.incidence();
    // vertices whose last incident edge is k
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, inc) in incidence.iter().enumerate() {
        if let Some(last) = inc.iter().map(|(e, _)| *e).max() {
            closing[last].push(v);
        }
    }
    let pairs: Vec<[[Quadrant; 2]; 2]> = dirs.iter().map(|&d| quadrant_pairs(d)).collect();

    struct Search<'a> {
        pairs: &'a [[[Quadrant; 2]; 2]],
        incidence: &'a [Vec<(usize, Direction)>],
        closing: &'a [Vec<usize>],
        choice: Vec<usize>,
        found: Vec<Vec<usize>>,
        limit: usize,
    }

    impl Search<'_> {
        fn vertex_ok(&self, v: usize) -> bool {
            QUADRANTS.iter().all(|q| {
                let n = self.incidence[v]
                    .iter()
                    .filter(|(e, _)| self.pairs[*e][self.choice[*e]].contains(q))
                    .count();
                n == 0 || n == 2
            })
        }

        fn run(&mut self, k: usize) {
            if self.found.len() >= self.limit {
                return;
            }
            if k == self.pairs.len() {
                self.found.push(self.choice.clone());
                return;
            }
            for p in 0..2 {
                self.choice[k] = p;
                if self.closing[k].iter().all(|&v| self.vertex_ok(v)) {
                    self.run(k + 1);
                }
            }
        }
    }

    let mut search = Search {
        pairs: &pairs,
        incidence: &incidence,
        closing: &closing,
        choice: vec![0; n],
        found: Vec::new(),
        limit,
    };
    if limit > 0 {
        search.run(0);
    }
    search
        .found
        .into_iter()
        .map(|choice| {
            let survivors = choice
                .iter()
                .enumerate()
                .flat_map(|(edge, &p)| pairs[edge][p].map(|quadrant| QuadrantCopy { edge, quadrant }));
            RealTropicalCurve::new(c.clone(), survivors)
        })
        .collect()
}

/// The affine Harnack bound `(d(d-1)+2)/2` on the number of components.
pub fn harnack_bound(d: u32) -> u32 {
    (d * d.saturating_sub(1) + 2) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    /// Quadrants the component passes through, sorted.
    pub quadrants: Vec<Quadrant>,
    /// Number of ray copies escaping to infinity.
    pub unbounded_ends: usize,
    pub edge_copies: usize,
}

impl ComponentInfo {
    pub fn is_bounded(&self) -> bool {
        self.unbounded_ends == 0
    }
}

/// Containment of one bounded component in another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingEntry {
    pub component: usize,
    /// The innermost bounded component enclosing this one.
    pub parent: Option<usize>,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementStats {
    pub component_count: usize,
    pub bounded_count: usize,
    pub unbounded_count: usize,
    pub components: Vec<ComponentInfo>,
    /// One entry per bounded component.
    pub nesting: Vec<NestingEntry>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Plane drawing of the real curve: each quadrant copy is the source curve
/// shifted into the open positive quadrant and reflected by the sign map.
pub struct Embedding {
    shift: (Rational, Rational),
}

impl Embedding {
    pub fn new(c: &TropicalCurve) -> Self {
        let min = |f: fn(&Point) -> &Rational| {
            c.vertices.iter().map(|v| f(&v.position)).min().cloned().unwrap_or_else(Rational::zero)
        };
        let one = Rational::one();
        Embedding { shift: (&one - min(|p| &p.x), &one - min(|p| &p.y)) }
    }

    /// Position of a source point in the given quadrant.
    pub fn place(&self, p: &Point, q: Quadrant) -> Point {
        let sx = if q.0 == 1 { -Rational::one() } else { Rational::one() };
        let sy = if q.1 == 1 { -Rational::one() } else { Rational::one() };
        Point::new(sx * (&p.x + &self.shift.0), sy * (&p.y + &self.shift.1))
    }

    /// Where a gluing ray copy meets the axes: on the y-axis, the x-axis or
    /// at the origin depending on which coordinates its reflection flips.
    pub fn axis_point(&self, base: &Point, d: Direction, q: Quadrant) -> Point {
        let b = self.place(base, q);
        let zero = Rational::zero();
        match (d.dx.rem_euclid(2), d.dy.rem_euclid(2)) {
            (1, 0) => Point::new(zero, b.y),
            (0, 1) => Point::new(b.x, zero),
            _ => Point::new(zero.clone(), zero),
        }
    }
}

/// Components, boundedness and nesting of a real tropical curve.
pub fn arrangement_stats(r: &RealTropicalCurve) -> ArrangementStats {
    let c = &r.source;
    let nv = c.vertices.len();
    let node = |v: usize, q: Quadrant| v * 4 + usize::from(q.0) * 2 + usize::from(q.1);
    let mut uf = UnionFind((0..nv * 4).collect());
    let mut used = vec![false; nv * 4];
    let ne = c.edges.len();
    let emb = Embedding::new(c);
    // drawn segments per node, later grouped by component
    let mut segments: Vec<(usize, Point, Point)> = Vec::new();
    let mut ends: Vec<usize> = Vec::new();
    let mut edge_copies: Vec<usize> = Vec::new();

    for s in &r.survivors {
        let q = s.quadrant;
        if s.edge < ne {
            let e = &c.edges[s.edge];
            let (a, b) = (node(e.from, q), node(e.to, q));
            used[a] = true;
            used[b] = true;
            uf.union(a, b);
            segments.push((a, emb.place(&c.vertices[e.from].position, q), emb.place(&c.vertices[e.to].position, q)));
            edge_copies.push(a);
        } else {
            let ray = &c.rays[s.edge - ne];
            let a = node(ray.base, q);
            used[a] = true;
            edge_copies.push(a);
            if glues(ray.direction) {
                let base = &c.vertices[ray.base].position;
                segments.push((a, emb.place(base, q), emb.axis_point(base, ray.direction, q)));
            } else {
                ends.push(a);
            }
        }
    }
    for (x, y) in &r.gluings {
        let bx = c.rays[x.edge - ne].base;
        uf.union(node(bx, x.quadrant), node(bx, y.quadrant));
    }

    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    for n in 0..nv * 4 {
        if used[n] {
            let root = uf.find(n);
            let next = roots.len();
            roots.entry(root).or_insert(next);
        }
    }
    let mut components: Vec<ComponentInfo> =
        vec![ComponentInfo { quadrants: Vec::new(), unbounded_ends: 0, edge_copies: 0 }; roots.len()];
    let mut witness: Vec<Option<Point>> = vec![None; roots.len()];
    for n in 0..nv * 4 {
        if used[n] {
            let k = roots[&uf.find(n)];
            let q = ((n % 4 / 2) as u8, (n % 2) as u8);
            if !components[k].quadrants.contains(&q) {
                components[k].quadrants.push(q);
            }
            if witness[k].is_none() {
                witness[k] = Some(emb.place(&c.vertices[n / 4].position, q));
            }
        }
    }
    for n in ends {
        components[roots[&uf.find(n)]].unbounded_ends += 1;
    }
    for n in edge_copies {
        components[roots[&uf.find(n)]].edge_copies += 1;
    }
    for comp in &mut components {
        comp.quadrants.sort();
    }

    let mut outlines: Vec<Vec<(Point, Point)>> = vec![Vec::new(); components.len()];
    for (n, a, b) in segments {
        outlines[roots[&uf.find(n)]].push((a, b));
    }
    // glued ray copies meet at the same axis point, so bounded outlines are closed
    let bounded: Vec<usize> = (0..components.len()).filter(|&k| components[k].is_bounded()).collect();
    let inside = |outer: usize, inner: usize| -> bool {
        let p = witness[inner].as_ref().expect("component has a vertex copy");
        crossings(&outlines[outer], p) % 2 == 1
    };
    let mut containers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &a in &bounded {
        let list = bounded.iter().copied().filter(|&b| b != a && inside(b, a)).collect();
        containers.insert(a, list);
    }
    let nesting = bounded
        .iter()
        .map(|&a| {
            let outer = &containers[&a];
            // the innermost container is the one enclosed by all the others
            let parent = outer.iter().copied().max_by_key(|b| containers[b].len());
            NestingEntry { component: a, parent, depth: outer.len() }
        })
        .collect();

    let bounded_count = bounded.len();
    ArrangementStats {
        component_count: components.len(),
        bounded_count,
        unbounded_count: components.len() - bounded_count,
        components,
        nesting,
    }
}

// Crossings of the rightward horizontal ray from `p` with the segments, using
// the half-open rule so shared endpoints are counted once.
fn crossings(segments: &[(Point, Point)], p: &Point) -> usize {
    segments
        .iter()
        .filter(|(a, b)| {
            if (a.y > p.y) == (b.y > p.y) {
                return false;
            }
            let t = (&p.y - &a.y) / (&b.y - &a.y);
            let x = &a.x + t * (&b.x - &a.x);
            x > p.x
        })
        .count()
}

/// Reflection helper used by the renderer: `(x, y) ↦ ((-1)^ε₁ x, (-1)^ε₂ y)`.
pub fn reflect(p: (f64, f64), q: Quadrant) -> (f64, f64) {
    let sx = if q.0 == 1 { -1.0 } else { 1.0 };
    let sy = if q.1 == 1 { -1.0 } else { 1.0 };
    (sx * p.0, sy * p.1)
}

/// Integer parity vector of a direction, exposed for diagnostics.
pub fn parity(d: Direction) -> Quadrant {
    flip((0, 0), d)
}
