//! Tropical plane curves as weighted rational graphs.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::bipoly::BiPoly;
use crate::error::SubdivisionError;
use crate::geometry::{Direction, Point};
use crate::number::{int, Rational};
use crate::subdivision::{dual_subdivision, DualSubdivision};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveVertex {
    pub position: Point,
    /// Index of the dual cell, when the curve carries its subdivision.
    pub cell: Option<usize>,
}

/// A bounded edge from vertex `from` to vertex `to`.
///
/// `direction` is the primitive vector pointing from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundedEdge {
    pub from: usize,
    pub to: usize,
    pub direction: Direction,
    pub weight: u64,
    /// Index of the dual lattice segment.
    pub dual: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    pub base: usize,
    pub direction: Direction,
    pub weight: u64,
    pub dual: Option<usize>,
}

/// A full line; only arises when the support is collinear.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub point: Point,
    pub direction: Direction,
    pub weight: u64,
    pub dual: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TropicalCurve {
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<BoundedEdge>,
    pub rays: Vec<Ray>,
    pub lines: Vec<Line>,
    pub dual: Option<DualSubdivision>,
}

/// Uniform view of one edge, ray or line as `base + s·direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGeometry {
    pub id: usize,
    pub base: Point,
    /// Unnormalised span vector for bounded edges, primitive otherwise.
    pub span: (Rational, Rational),
    pub direction: Direction,
    pub weight: u64,
    pub kind: EdgeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// `s ∈ [0, 1]`
    Bounded,
    /// `s ∈ [0, ∞)`
    Ray,
    /// `s ∈ (-∞, ∞)`
    Line,
}

/// One weighted piece of a curve, see [`TropicalCurve::weighted_pieces`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    Segment(Point, Point, Direction, u64),
    Ray(Point, Direction, u64),
    Line(Point, Direction, u64),
}

impl EdgeGeometry {
    pub fn point_at(&self, s: &Rational) -> Point {
        Point::new(&self.base.x + s * &self.span.0, &self.base.y + s * &self.span.1)
    }
}

impl TropicalCurve {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.lines.is_empty()
    }

    /// Number of edges, rays and lines. Edge ids used throughout the crate
    /// enumerate bounded edges first, then rays, then lines.
    pub fn edge_count(&self) -> usize {
        self.edges.len() + self.rays.len() + self.lines.len()
    }

    pub fn edge_geometry(&self) -> Vec<EdgeGeometry> {
        let mut out = Vec::with_capacity(self.edge_count());
        for e in &self.edges {
            let a = &self.vertices[e.from].position;
            let b = &self.vertices[e.to].position;
            out.push(EdgeGeometry {
                id: out.len(),
                base: a.clone(),
                span: (&b.x - &a.x, &b.y - &a.y),
                direction: e.direction,
                weight: e.weight,
                kind: EdgeKind::Bounded,
            });
        }
        for r in &self.rays {
            out.push(EdgeGeometry {
                id: out.len(),
                base: self.vertices[r.base].position.clone(),
                span: (int(r.direction.dx), int(r.direction.dy)),
                direction: r.direction,
                weight: r.weight,
                kind: EdgeKind::Ray,
            });
        }
        for l in &self.lines {
            out.push(EdgeGeometry {
                id: out.len(),
                base: l.point.clone(),
                span: (int(l.direction.dx), int(l.direction.dy)),
                direction: l.direction,
                weight: l.weight,
                kind: EdgeKind::Line,
            });
        }
        out
    }

    /// Direction and weight of the edge with the given unified id.
    pub fn edge_direction(&self, id: usize) -> Option<(Direction, u64)> {
        let ne = self.edges.len();
        let nr = self.rays.len();
        if id < ne {
            Some((self.edges[id].direction, self.edges[id].weight))
        } else if id < ne + nr {
            Some((self.rays[id - ne].direction, self.rays[id - ne].weight))
        } else {
            self.lines.get(id - ne - nr).map(|l| (l.direction, l.weight))
        }
    }

    /// Edge ids incident to each vertex, with outgoing primitive direction.
    pub fn incidence(&self) -> Vec<Vec<(usize, Direction)>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            out[e.from].push((k, e.direction));
            out[e.to].push((k, e.direction.neg()));
        }
        for (k, r) in self.rays.iter().enumerate() {
            out[r.base].push((self.edges.len() + k, r.direction));
        }
        out
    }

    /// The curve as a sorted list of weighted pieces, independent of vertex
    /// and edge numbering and of the dual data.
    pub fn weighted_pieces(&self) -> Vec<Piece> {
        let mut out = Vec::with_capacity(self.edge_count());
        for e in &self.edges {
            let (a, b) = (self.vertices[e.from].position.clone(), self.vertices[e.to].position.clone());
            let (a, b, d) = if a <= b { (a, b, e.direction) } else { (b, a, e.direction.neg()) };
            out.push(Piece::Segment(a, b, d, e.weight));
        }
        for r in &self.rays {
            out.push(Piece::Ray(self.vertices[r.base].position.clone(), r.direction, r.weight));
        }
        for l in &self.lines {
            out.push(Piece::Line(l.point.clone(), l.direction, l.weight));
        }
        out.sort();
        out
    }

    /// The same curve moved by `(tx, ty)`.
    pub fn translated(&self, tx: &Rational, ty: &Rational) -> TropicalCurve {
        let mut c = self.clone();
        for v in &mut c.vertices {
            v.position = Point::new(&v.position.x + tx, &v.position.y + ty);
        }
        for l in &mut c.lines {
            l.point = Point::new(&l.point.x + tx, &l.point.y + ty);
        }
        c
    }
}

/// Builds the curve from a subdivision and one position per cell.
fn assemble(subdivision: &DualSubdivision, positions: Vec<Point>) -> TropicalCurve {
    let vertices = positions
        .into_iter()
        .enumerate()
        .map(|(k, position)| CurveVertex { position, cell: Some(k) })
        .collect();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (k, e) in subdivision.edges.iter().enumerate() {
        let weight = e.lattice_length();
        let direction = e.outward_normal();
        match (e.left, e.right) {
            (Some(a), Some(b)) => edges.push(BoundedEdge { from: a, to: b, direction, weight, dual: Some(k) }),
            (Some(a), None) => rays.push(Ray { base: a, direction, weight, dual: Some(k) }),
            _ => {}
        }
    }
    TropicalCurve { vertices, edges, rays, lines: Vec::new(), dual: Some(subdivision.clone()) }
}

/// The corner locus of `p` with weights, dual cells and dual segments.
pub fn tropical_curve(p: &BiPoly) -> TropicalCurve {
    let subdivision = dual_subdivision(p);
    match subdivision.dimension {
        0 => TropicalCurve { dual: Some(subdivision), ..TropicalCurve::default() },
        1 => {
            let heights: std::collections::BTreeMap<_, _> = p.terms().collect();
            let lines = subdivision
                .edges
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let (dx, dy) = e.end.sub(e.start);
                    // a_start + start·X = a_end + end·X along the normal through the origin
                    let scale = (heights[&e.start] - heights[&e.end]) / int(dx * dx + dy * dy);
                    let point = Point::new(&scale * int(dx), &scale * int(dy));
                    let normal = e.outward_normal();
                    let direction = if normal.dx > 0 || (normal.dx == 0 && normal.dy > 0) { normal } else { normal.neg() };
                    Line { point, direction, weight: e.lattice_length(), dual: Some(k) }
                })
                .collect();
            TropicalCurve { lines, dual: Some(subdivision), ..TropicalCurve::default() }
        }
        _ => {
            let positions = subdivision
                .cells
                .iter()
                .map(|c| c.lift.as_ref().expect("computed cells carry a lift").dual_point())
                .collect();
            assemble(&subdivision, positions)
        }
    }
}

/// Ray weight sums in the three standard directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    /// Sum of weights of rays in direction `(-1, 0)`.
    pub degree: u64,
    pub down: u64,
    pub diagonal: u64,
    /// True when every ray points in a standard direction, there are no
    /// full lines, and the three sums agree.
    pub standard: bool,
}

pub fn degree(c: &TropicalCurve) -> DegreeReport {
    let sum = |dx: i64, dy: i64| -> u64 {
        c.rays
            .iter()
            .filter(|r| r.direction == Direction { dx, dy })
            .map(|r| r.weight)
            .sum()
    };
    let (left, down, diagonal) = (sum(-1, 0), sum(0, -1), sum(1, 1));
    let only_standard = c.rays.iter().all(|r| {
        matches!((r.direction.dx, r.direction.dy), (-1, 0) | (0, -1) | (1, 1))
    });
    DegreeReport {
        degree: left,
        down,
        diagonal,
        standard: c.lines.is_empty() && only_standard && left == down && down == diagonal && left > 0,
    }
}

/// Rebuilds a curve from its dual subdivision, the edge lengths recorded on
/// its interior segments, and the position of the vertex dual to `anchor`.
///
/// Positions are propagated across interior segments along the primitive
/// normal; any cycle of cells whose propagated positions disagree is
/// reported.
pub fn curve_from_dual_description(
    subdivision: &DualSubdivision,
    anchor: usize,
    position: Point,
) -> Result<TropicalCurve, SubdivisionError> {
    let n = subdivision.cells.len();
    if n == 0 {
        return Err(SubdivisionError::NoCells);
    }
    if anchor >= n {
        return Err(SubdivisionError::UnknownCell(anchor));
    }
    let (cells, polygon) = (subdivision.cells_twice_area(), subdivision.newton_twice_area());
    if cells != polygon {
        return Err(SubdivisionError::AreaMismatch { cells, polygon });
    }

    // (edge, neighbour, offset from this cell's vertex to the neighbour's)
    let mut adjacency: Vec<Vec<(usize, usize, Rational, Rational)>> = vec![Vec::new(); n];
    for (k, e) in subdivision.edges.iter().enumerate() {
        for c in [e.left, e.right].into_iter().flatten() {
            if c >= n {
                return Err(SubdivisionError::UnknownCell(c));
            }
        }
        let (Some(a), Some(b)) = (e.left, e.right) else { continue };
        let length = e
            .length
            .clone()
            .ok_or(SubdivisionError::MissingLength { edge: k, start: e.start, end: e.end })?;
        if length <= Rational::zero() {
            return Err(SubdivisionError::NonPositiveLength { edge: k });
        }
        let normal = e.outward_normal();
        let (ox, oy) = (&length * int(normal.dx), &length * int(normal.dy));
        adjacency[a].push((k, b, ox.clone(), oy.clone()));
        adjacency[b].push((k, a, -ox, -oy));
    }

    let mut positions: Vec<Option<Point>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    positions[anchor] = Some(position);
    let mut queue = VecDeque::from([anchor]);
    let mut tree_edges = std::collections::BTreeSet::new();
    while let Some(c) = queue.pop_front() {
        let here = positions[c].clone().expect("visited");
        for (k, nb, ox, oy) in &adjacency[c] {
            if positions[*nb].is_none() {
                positions[*nb] = Some(Point::new(&here.x + ox, &here.y + oy));
                parent[*nb] = Some(c);
                tree_edges.insert(*k);
                queue.push_back(*nb);
            }
        }
    }
    let unreached: Vec<usize> = (0..n).filter(|&c| positions[c].is_none()).collect();
    if !unreached.is_empty() {
        return Err(SubdivisionError::Disconnected(unreached));
    }
    let positions: Vec<Point> = positions.into_iter().map(|p| p.expect("all reached")).collect();

    for c in 0..n {
        for (k, nb, ox, oy) in &adjacency[c] {
            if tree_edges.contains(k) {
                continue;
            }
            let expected = Point::new(&positions[c].x + ox, &positions[c].y + oy);
            if expected != positions[*nb] {
                return Err(SubdivisionError::InconsistentCycle { cycle: tree_cycle(&parent, c, *nb) });
            }
        }
    }
    Ok(assemble(subdivision, positions))
}

// Cells on the tree path from `a` to `b`, closing the cycle through the non-tree edge.
fn tree_cycle(parent: &[Option<usize>], a: usize, b: usize) -> Vec<usize> {
    let ancestors = |mut c: usize| {
        let mut path = vec![c];
        while let Some(p) = parent[c] {
            path.push(p);
            c = p;
        }
        path
    };
    let pa = ancestors(a);
    let pb = ancestors(b);
    let lca = *pa.iter().find(|c| pb.contains(c)).expect("common root");
    let mut cycle: Vec<usize> = pa.iter().take_while(|&&c| c != lca).copied().collect();
    cycle.push(lca);
    let back: Vec<usize> = pb.iter().take_while(|&&c| c != lca).copied().collect();
    cycle.extend(back.into_iter().rev());
    cycle
}
