//! JSON wire formats.
//!
//! Rationals travel as strings (`"3"`, `"-3/2"`, `"-inf"` for the bottom
//! element) so nothing is lost to floating point. Top-level documents carry
//! `"schema": "tropica/1"`; nested values do not.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::amoeba::{AmoebaSample, CoefficientFamily, ConvergenceReport, ConvergenceRow, SeriesTerm, Window};
use crate::balance::{BalanceReport, Violation};
use crate::bipoly::BiPoly;
use crate::curve::{degree, BoundedEdge, CurveVertex, DegreeReport, Line, Ray, TropicalCurve};
use crate::error::ParseError;
use crate::geometry::{Direction, LatticePoint, Point};
use crate::intersect::{BezoutReport, IntersectionKind, IntersectionPoint};
use crate::number::{format_rational, parse_rational, DownSet, Rational, Sign, TropicalNumber};
use crate::patchwork::{
    ArrangementStats, ComponentInfo, NestingEntry, Quadrant, QuadrantCopy, RuleViolation, ValidationReport,
};
use crate::subdivision::{AffineLift, Cell, DualSubdivision, SubdivisionEdge};
use crate::univariate::{Factorization, Root, RootList, UniPoly};

pub const SCHEMA: &str = "tropica/1";

/// A value with a JSON representation.
pub trait Wire: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ParseError>;
}

/// Adds the schema tag to an object.
pub fn document(mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        let mut out = Map::new();
        out.insert("schema".into(), Value::String(SCHEMA.into()));
        out.extend(std::mem::take(map));
        return Value::Object(out);
    }
    body
}

/// Rejects documents tagged with a different schema; untagged input is accepted.
pub fn check_schema(v: &Value) -> Result<(), ParseError> {
    match v.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == SCHEMA => Ok(()),
        Some(other) => Err(ParseError::Schema(other.to_string())),
    }
}

/// Parses text into a JSON value and checks its schema tag.
pub fn parse_document(text: &str) -> Result<Value, ParseError> {
    let v: Value = serde_json::from_str(text)?;
    check_schema(&v)?;
    Ok(v)
}

/// `{"schema": ..., "error": {"kind": ..., "message": ...}}`
pub fn error_document(kind: &str, message: &str) -> Value {
    document(json!({ "error": { "kind": kind, "message": message } }))
}

pub fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, ParseError> {
    v.get(name).ok_or_else(|| ParseError::Invalid(format!("missing field {name:?}")))
}

fn invalid(what: &str, v: &Value) -> ParseError {
    ParseError::Invalid(format!("expected {what}, found {v}"))
}

pub fn array(v: &Value) -> Result<&Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| invalid("an array", v))
}

pub fn uint(v: &Value) -> Result<u64, ParseError> {
    v.as_u64().ok_or_else(|| invalid("a non-negative integer", v))
}

fn index(v: &Value) -> Result<usize, ParseError> {
    usize::try_from(uint(v)?).map_err(|_| invalid("an index", v))
}

fn exponent(v: &Value) -> Result<u32, ParseError> {
    u32::try_from(uint(v)?).map_err(|_| invalid("an exponent", v))
}

fn integer(v: &Value) -> Result<i64, ParseError> {
    v.as_i64().ok_or_else(|| invalid("an integer", v))
}

fn float(v: &Value) -> Result<f64, ParseError> {
    v.as_f64().ok_or_else(|| invalid("a number", v))
}

fn boolean(v: &Value) -> Result<bool, ParseError> {
    v.as_bool().ok_or_else(|| invalid("a boolean", v))
}

fn opt<T>(v: Option<&Value>, f: impl Fn(&Value) -> Result<T, ParseError>) -> Result<Option<T>, ParseError> {
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(x) => f(x).map(Some),
    }
}

fn list<T>(v: &Value, f: impl Fn(&Value) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
    array(v)?.iter().map(f).collect()
}

/// A rational given as a string, or as a JSON number for convenience.
pub fn rational(v: &Value) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(invalid("a rational string", v)),
    }
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

impl Wire for Rational {
    fn to_json(&self) -> Value {
        rational_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        rational(v)
    }
}

impl Wire for TropicalNumber {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(_) => rational(v).map(TropicalNumber::Finite),
            _ => Err(invalid("a tropical number string", v)),
        }
    }
}

impl Wire for Sign {
    fn to_json(&self) -> Value {
        json!(self.as_i8())
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let n = integer(v)?;
        i8::try_from(n).ok().and_then(Sign::from_i8).ok_or_else(|| invalid("-1, 0 or 1", v))
    }
}

impl Wire for DownSet {
    fn to_json(&self) -> Value {
        match self {
            DownSet::Singleton(x) => json!({ "kind": "singleton", "value": x.to_json() }),
            DownSet::ClosedRay(u) => json!({ "kind": "closed-ray", "upper": u.to_json() }),
        }
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        match field(v, "kind")?.as_str() {
            Some("singleton") => Ok(DownSet::Singleton(TropicalNumber::from_json(field(v, "value")?)?)),
            Some("closed-ray") => Ok(DownSet::ClosedRay(TropicalNumber::from_json(field(v, "upper")?)?)),
            _ => Err(invalid("\"singleton\" or \"closed-ray\"", field(v, "kind")?)),
        }
    }
}

impl Wire for LatticePoint {
    fn to_json(&self) -> Value {
        json!([self.i, self.j])
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        match array(v)?.as_slice() {
            [i, j] => Ok(LatticePoint::new(integer(i)?, integer(j)?)),
            _ => Err(invalid("a lattice point [i, j]", v)),
        }
    }
}

impl Wire for Direction {
    fn to_json(&self) -> Value {
        json!([self.dx, self.dy])
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        match array(v)?.as_slice() {
            [dx, dy] => Ok(Direction { dx: integer(dx)?, dy: integer(dy)? }),
            _ => Err(invalid("a direction [dx, dy]", v)),
        }
    }
}

impl Wire for Point {
    fn to_json(&self) -> Value {
        json!({ "x": rational_json(&self.x), "y": rational_json(&self.y) })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        Ok(Point::new(rational(field(v, "x")?)?, rational(field(v, "y")?)?))
    }
}

fn poly_error(e: crate::error::PolyError) -> ParseError {
    ParseError::Invalid(e.to_string())
}

impl Wire for UniPoly {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms().map(|(i, a)| json!({ "i": i, "coeff": rational_json(a) })).collect();
        json!({ "vars": 1, "terms": terms })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        if let Some(n) = v.get("vars") {
            if uint(n)? != 1 {
                return Err(invalid("\"vars\": 1", n));
            }
        }
        let terms = list(field(v, "terms")?, |t| Ok((exponent(field(t, "i")?)?, TropicalNumber::from_json(field(t, "coeff")?)?)))?;
        UniPoly::new(terms).map_err(poly_error)
    }
}

impl Wire for BiPoly {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(p, a)| json!({ "i": p.i, "j": p.j, "coeff": rational_json(a) }))
            .collect();
        json!({ "vars": 2, "terms": terms })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        if let Some(n) = v.get("vars") {
            if uint(n)? != 2 {
                return Err(invalid("\"vars\": 2", n));
            }
        }
        let terms = list(field(v, "terms")?, |t| {
            Ok(((exponent(field(t, "i")?)?, exponent(field(t, "j")?)?), TropicalNumber::from_json(field(t, "coeff")?)?))
        })?;
        BiPoly::new(terms).map_err(poly_error)
    }
}

impl Wire for RootList {
    fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|r| json!({ "root": r.root.to_json(), "order": r.order }))
                .collect(),
        )
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let entries = list(v, |r| {
            let order = u32::try_from(uint(field(r, "order")?)?).map_err(|_| invalid("an order", r))?;
            if order == 0 {
                return Err(ParseError::Invalid("root orders must be positive".into()));
            }
            Ok(Root { root: TropicalNumber::from_json(field(r, "root")?)?, order })
        })?;
        Ok(RootList::new(entries))
    }
}

impl Wire for Factorization {
    fn to_json(&self) -> Value {
        json!({ "leading": self.leading.to_json(), "roots": self.roots.to_json() })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        Ok(Factorization {
            leading: TropicalNumber::from_json(field(v, "leading")?)?,
            roots: RootList::from_json(field(v, "roots")?)?,
        })
    }
}

impl Wire for AffineLift {
    fn to_json(&self) -> Value {
        json!({
            "slope_i": rational_json(&self.slope_i),
            "slope_j": rational_json(&self.slope_j),
            "offset": rational_json(&self.offset),
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        Ok(AffineLift {
            slope_i: rational(field(v, "slope_i")?)?,
            slope_j: rational(field(v, "slope_j")?)?,
            offset: rational(field(v, "offset")?)?,
        })
    }
}

fn points_json(ps: &[LatticePoint]) -> Value {
    Value::Array(ps.iter().map(Wire::to_json).collect())
}

impl Wire for DualSubdivision {
    fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                json!({
                    "vertices": points_json(&c.vertices),
                    "points": points_json(&c.points),
                    "lift": c.lift.as_ref().map_or(Value::Null, Wire::to_json),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "start": e.start.to_json(),
                    "end": e.end.to_json(),
                    "left": e.left,
                    "right": e.right,
                    "length": e.length.as_ref().map_or(Value::Null, rational_json),
                    "weight": e.lattice_length(),
                })
            })
            .collect();
        json!({
            "newton_polygon": points_json(&self.newton_polygon),
            "cells": cells,
            "edges": edges,
            "lattice_points": points_json(&self.lattice_points),
            "dimension": self.dimension,
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let cells = list(field(v, "cells")?, |c| {
            Ok(Cell {
                vertices: list(field(c, "vertices")?, LatticePoint::from_json)?,
                points: list(field(c, "points")?, LatticePoint::from_json)?,
                lift: opt(c.get("lift"), AffineLift::from_json)?,
            })
        })?;
        let edges = list(field(v, "edges")?, |e| {
            let start = LatticePoint::from_json(field(e, "start")?)?;
            let end = LatticePoint::from_json(field(e, "end")?)?;
            if start == end {
                return Err(ParseError::Invalid("subdivision edge with equal endpoints".into()));
            }
            Ok(SubdivisionEdge {
                start,
                end,
                left: opt(e.get("left"), index)?,
                right: opt(e.get("right"), index)?,
                length: opt(e.get("length"), rational)?,
            })
        })?;
        let dimension = u8::try_from(uint(field(v, "dimension")?)?).map_err(|_| invalid("a dimension", v))?;
        Ok(DualSubdivision {
            newton_polygon: list(field(v, "newton_polygon")?, LatticePoint::from_json)?,
            cells,
            edges,
            lattice_points: list(field(v, "lattice_points")?, LatticePoint::from_json)?,
            dimension,
        })
    }
}

impl Wire for DegreeReport {
    fn to_json(&self) -> Value {
        json!({ "degree": self.degree, "down": self.down, "diagonal": self.diagonal, "standard": self.standard })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        Ok(DegreeReport {
            degree: uint(field(v, "degree")?)?,
            down: uint(field(v, "down")?)?,
            diagonal: uint(field(v, "diagonal")?)?,
            standard: boolean(field(v, "standard")?)?,
        })
    }
}

impl Wire for TropicalCurve {
    fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| {
                json!({ "x": rational_json(&v.position.x), "y": rational_json(&v.position.y), "cell": v.cell })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                json!({ "from": e.from, "to": e.to, "direction": e.direction.to_json(), "weight": e.weight, "dual": e.dual })
            })
            .collect();
        let rays: Vec<Value> = self
            .rays
            .iter()
            .map(|r| json!({ "base": r.base, "direction": r.direction.to_json(), "weight": r.weight, "dual": r.dual }))
            .collect();
        let lines: Vec<Value> = self
            .lines
            .iter()
            .map(|l| {
                json!({
                    "x": rational_json(&l.point.x),
                    "y": rational_json(&l.point.y),
                    "direction": l.direction.to_json(),
                    "weight": l.weight,
                    "dual": l.dual,
                })
            })
            .collect();
        json!({
            "vertices": vertices,
            "edges": edges,
            "rays": rays,
            "lines": lines,
            "degree": degree(self).to_json(),
            "dual": self.dual.as_ref().map_or(Value::Null, Wire::to_json),
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let empty = Value::Array(Vec::new());
        let vertices = list(field(v, "vertices")?, |x| {
            Ok(CurveVertex { position: Point::from_json(x)?, cell: opt(x.get("cell"), index)? })
        })?;
        let edges = list(v.get("edges").unwrap_or(&empty), |e| {
            Ok(BoundedEdge {
                from: index(field(e, "from")?)?,
                to: index(field(e, "to")?)?,
                direction: Direction::from_json(field(e, "direction")?)?,
                weight: uint(field(e, "weight")?)?,
                dual: opt(e.get("dual"), index)?,
            })
        })?;
        let rays = list(v.get("rays").unwrap_or(&empty), |r| {
            Ok(Ray {
                base: index(field(r, "base")?)?,
                direction: Direction::from_json(field(r, "direction")?)?,
                weight: uint(field(r, "weight")?)?,
                dual: opt(r.get("dual"), index)?,
            })
        })?;
        let lines = list(v.get("lines").unwrap_or(&empty), |l| {
            Ok(Line {
                point: Point::from_json(l)?,
                direction: Direction::from_json(field(l, "direction")?)?,
                weight: uint(field(l, "weight")?)?,
                dual: opt(l.get("dual"), index)?,
            })
        })?;
        Ok(TropicalCurve { vertices, edges, rays, lines, dual: opt(v.get("dual"), DualSubdivision::from_json)? })
    }
}

impl Wire for IntersectionPoint {
    fn to_json(&self) -> Value {
        let witnesses: Vec<Value> = self.witnesses.iter().map(|(a, b)| json!([a, b])).collect();
        json!({
            "x": rational_json(&self.point.x),
            "y": rational_json(&self.point.y),
            "mult": self.multiplicity,
            "kind": self.kind.as_str(),
            "witnesses": witnesses,
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let kind = match field(v, "kind")?.as_str() {
            Some("transverse") => IntersectionKind::Transverse,
            Some("stable-limit") => IntersectionKind::StableLimit,
            _ => return Err(invalid("\"transverse\" or \"stable-limit\"", field(v, "kind")?)),
        };
        let empty = Value::Array(Vec::new());
        let witnesses = list(v.get("witnesses").unwrap_or(&empty), |w| match array(w)?.as_slice() {
            [a, b] => Ok((index(a)?, index(b)?)),
            _ => Err(invalid("an edge pair", w)),
        })?;
        Ok(IntersectionPoint { point: Point::from_json(v)?, multiplicity: uint(field(v, "mult")?)?, kind, witnesses })
    }
}

impl Wire for Vec<IntersectionPoint> {
    fn to_json(&self) -> Value {
        let total: u64 = self.iter().map(|p| p.multiplicity).sum();
        json!({ "points": self.iter().map(Wire::to_json).collect::<Vec<_>>(), "total": total })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        list(field(v, "points")?, IntersectionPoint::from_json)
    }
}

impl Wire for BezoutReport {
    fn to_json(&self) -> Value {
        json!({
            "points": self.points.iter().map(Wire::to_json).collect::<Vec<_>>(),
            "total": self.total,
            "d1": self.d1,
            "d2": self.d2,
            "bezout_ok": self.ok,
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        Ok(BezoutReport {
            d1: exponent(field(v, "d1")?)?,
            d2: exponent(field(v, "d2")?)?,
            total: uint(field(v, "total")?)?,
            ok: boolean(field(v, "bezout_ok")?)?,
            points: list(field(v, "points")?, IntersectionPoint::from_json)?,
        })
    }
}

impl Wire for BalanceReport {
    fn to_json(&self) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| json!({ "vertex": v.vertex, "residual": [v.residual.0, v.residual.1] }))
            .collect();
        json!({ "ok": self.is_balanced(), "violations": violations })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let violations = list(field(v, "violations")?, |x| {
            let r = array(field(x, "residual")?)?;
            match r.as_slice() {
                [a, b] => Ok(Violation { vertex: index(field(x, "vertex")?)?, residual: (integer(a)?, integer(b)?) }),
                _ => Err(invalid("a residual pair", x)),
            }
        })?;
        Ok(BalanceReport { violations })
    }
}

fn quadrant_json(q: Quadrant) -> Value {
    json!([q.0, q.1])
}

fn quadrant(v: &Value) -> Result<Quadrant, ParseError> {
    match array(v)?.as_slice() {
        [a, b] => {
            let a = u8::try_from(uint(a)?).map_err(|_| invalid("a bit", v))?;
            let b = u8::try_from(uint(b)?).map_err(|_| invalid("a bit", v))?;
            Ok((a, b))
        }
        _ => Err(invalid("a quadrant [e1, e2]", v)),
    }
}

/// Survivor sets are grouped by edge: `[{"edge": 3, "quadrants": [[0,1],[1,1]]}]`.
impl Wire for Vec<QuadrantCopy> {
    fn to_json(&self) -> Value {
        let mut by_edge: BTreeMap<usize, Vec<Quadrant>> = BTreeMap::new();
        for c in self {
            by_edge.entry(c.edge).or_default().push(c.quadrant);
        }
        Value::Array(
            by_edge
                .into_iter()
                .map(|(edge, mut qs)| {
                    qs.sort();
                    json!({ "edge": edge, "quadrants": qs.into_iter().map(quadrant_json).collect::<Vec<_>>() })
                })
                .collect(),
        )
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let mut out = Vec::new();
        for entry in array(v)? {
            let edge = index(field(entry, "edge")?)?;
            for q in array(field(entry, "quadrants")?)? {
                out.push(QuadrantCopy { edge, quadrant: quadrant(q)? });
            }
        }
        out.sort();
        Ok(out)
    }
}

impl Wire for ValidationReport {
    fn to_json(&self) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| match v {
                RuleViolation::CopyCount { edge, count } => json!({ "rule": "copy-count", "edge": edge, "count": count }),
                RuleViolation::Pairing { edge, quadrants } => json!({
                    "rule": "pairing",
                    "edge": edge,
                    "quadrants": [quadrant_json(quadrants[0]), quadrant_json(quadrants[1])],
                }),
                RuleViolation::Vertex { vertex, quadrant, survivors } => json!({
                    "rule": "vertex",
                    "vertex": vertex,
                    "quadrant": quadrant_json(*quadrant),
                    "survivors": survivors,
                }),
            })
            .collect();
        json!({ "ok": self.is_ok(), "violations": violations })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let violations = list(field(v, "violations")?, |x| match field(x, "rule")?.as_str() {
            Some("copy-count") => {
                Ok(RuleViolation::CopyCount { edge: index(field(x, "edge")?)?, count: index(field(x, "count")?)? })
            }
            Some("pairing") => {
                let qs = list(field(x, "quadrants")?, quadrant)?;
                let [a, b] = qs.as_slice() else { return Err(invalid("two quadrants", x)) };
                Ok(RuleViolation::Pairing { edge: index(field(x, "edge")?)?, quadrants: [*a, *b] })
            }
            Some("vertex") => Ok(RuleViolation::Vertex {
                vertex: index(field(x, "vertex")?)?,
                quadrant: quadrant(field(x, "quadrant")?)?,
                survivors: index(field(x, "survivors")?)?,
            }),
            _ => Err(invalid("a rule name", x)),
        })?;
        Ok(ValidationReport { violations })
    }
}

impl Wire for ArrangementStats {
    fn to_json(&self) -> Value {
        let details: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "quadrants": c.quadrants.iter().map(|&q| quadrant_json(q)).collect::<Vec<_>>(),
                    "unbounded_ends": c.unbounded_ends,
                    "edge_copies": c.edge_copies,
                    "bounded": c.is_bounded(),
                })
            })
            .collect();
        let nesting: Vec<Value> = self
            .nesting
            .iter()
            .map(|n| json!({ "component": n.component, "parent": n.parent, "depth": n.depth }))
            .collect();
        json!({
            "components": self.component_count,
            "bounded": self.bounded_count,
            "unbounded": self.unbounded_count,
            "details": details,
            "nesting": nesting,
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let components = list(field(v, "details")?, |c| {
            Ok(ComponentInfo {
                quadrants: list(field(c, "quadrants")?, quadrant)?,
                unbounded_ends: index(field(c, "unbounded_ends")?)?,
                edge_copies: index(field(c, "edge_copies")?)?,
            })
        })?;
        let nesting = list(field(v, "nesting")?, |n| {
            Ok(NestingEntry {
                component: index(field(n, "component")?)?,
                parent: opt(n.get("parent"), index)?,
                depth: index(field(n, "depth")?)?,
            })
        })?;
        Ok(ArrangementStats {
            component_count: index(field(v, "components")?)?,
            bounded_count: index(field(v, "bounded")?)?,
            unbounded_count: index(field(v, "unbounded")?)?,
            components,
            nesting,
        })
    }
}

impl Wire for CoefficientFamily {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(p, series)| {
                let series: Vec<Value> = series
                    .iter()
                    .map(|s| json!({ "r": rational_json(&s.r), "beta": [rational_json(&s.beta.0), rational_json(&s.beta.1)] }))
                    .collect();
                json!({ "i": p.i, "j": p.j, "series": series })
            })
            .collect();
        json!({ "terms": terms })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let terms = list(field(v, "terms")?, |t| {
            let series = list(field(t, "series")?, |s| {
                let beta = match array(field(s, "beta")?)?.as_slice() {
                    [re, im] => (rational(re)?, rational(im)?),
                    [re] => (rational(re)?, Rational::from_integer(0.into())),
                    _ => return Err(invalid("beta as [re, im]", s)),
                };
                Ok(SeriesTerm { r: rational(field(s, "r")?)?, beta })
            })?;
            Ok(((exponent(field(t, "i")?)?, exponent(field(t, "j")?)?), series))
        })?;
        CoefficientFamily::new(terms).map_err(|e| ParseError::Invalid(e.to_string()))
    }
}

fn window_json(w: &Window) -> Value {
    json!([w.x0, w.y0, w.x1, w.y1])
}

fn window(v: &Value) -> Result<Window, ParseError> {
    match list(v, float)?.as_slice() {
        [x0, y0, x1, y1] => Ok(Window { x0: *x0, y0: *y0, x1: *x1, y1: *y1 }),
        _ => Err(invalid("a window [x0, y0, x1, y1]", v)),
    }
}

impl Wire for AmoebaSample {
    fn to_json(&self) -> Value {
        json!({
            "t": self.t,
            "points": self.points.iter().map(|p| json!([p.0, p.1])).collect::<Vec<_>>(),
            "window": window_json(&self.window),
            "moduli": self.moduli,
            "phases": self.phases,
            "max_residual": self.max_residual,
            "rejected": self.rejected,
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let points = list(field(v, "points")?, |p| match list(p, float)?.as_slice() {
            [x, y] => Ok((*x, *y)),
            _ => Err(invalid("a point [x, y]", p)),
        })?;
        Ok(AmoebaSample {
            t: float(field(v, "t")?)?,
            points,
            window: window(field(v, "window")?)?,
            moduli: index(field(v, "moduli")?)?,
            phases: index(field(v, "phases")?)?,
            max_residual: float(field(v, "max_residual")?)?,
            rejected: index(field(v, "rejected")?)?,
        })
    }
}

impl Wire for ConvergenceReport {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({ "t": r.t, "dev": r.dev, "cov": r.cov, "samples": r.samples, "max_residual": r.max_residual }))
            .collect();
        json!({
            "rows": rows,
            "t": self.rows.iter().map(|r| r.t).collect::<Vec<_>>(),
            "dev": self.rows.iter().map(|r| r.dev).collect::<Vec<_>>(),
            "cov": self.rows.iter().map(|r| r.cov).collect::<Vec<_>>(),
            "strictly_decreasing": self.strictly_decreasing,
            "fit_c": self.fit_c,
            "envelope_c": self.envelope_c,
            "window": window_json(&self.window),
            "note": "distances are measured inside the sampling window; C/ln t is an empirical fit",
        })
    }
    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let rows = list(field(v, "rows")?, |r| {
            Ok(ConvergenceRow {
                t: float(field(r, "t")?)?,
                dev: float(field(r, "dev")?)?,
                cov: float(field(r, "cov")?)?,
                samples: index(field(r, "samples")?)?,
                max_residual: float(field(r, "max_residual")?)?,
            })
        })?;
        Ok(ConvergenceReport {
            rows,
            strictly_decreasing: boolean(field(v, "strictly_decreasing")?)?,
            fit_c: float(field(v, "fit_c")?)?,
            envelope_c: float(field(v, "envelope_c")?)?,
            window: window(field(v, "window")?)?,
        })
    }
}

/// Serialises a value as a tagged top-level document.
pub fn to_document<T: Wire>(v: &T) -> Value {
    match v.to_json() {
        obj @ Value::Object(_) => document(obj),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::tropical_curve;
    use crate::number::rat;

    #[test]
    fn numbers_round_trip() {
        for s in ["-inf", "3", "-3/2", "0"] {
            let x = TropicalNumber::from_json(&json!(s)).unwrap();
            assert_eq!(x.to_json(), json!(s));
        }
        assert_eq!(TropicalNumber::from_json(&json!("-1.5")).unwrap(), TropicalNumber::Finite(rat(-3, 2)));
        assert!(TropicalNumber::from_json(&json!("abc")).is_err());
    }

    #[test]
    fn curve_round_trips() {
        let p = BiPoly::from_ints(&[((0, 0), 3), ((1, 0), 2), ((0, 1), 2), ((1, 1), 3), ((2, 0), 0), ((0, 2), 0)]);
        let c = tropical_curve(&p);
        let back = TropicalCurve::from_json(&to_document(&c)).unwrap();
        assert_eq!(back, c);
        assert_eq!(BiPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        assert!(parse_document(r#"{"schema":"tropica/9"}"#).is_err());
        assert!(parse_document(r#"{"schema":"tropica/1","vars":1}"#).is_ok());
        assert!(parse_document("{").is_err());
    }
}
