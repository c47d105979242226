//! Deterministic SVG drawings of curves, subdivisions, patchworks and amoebas.
//!
//! Output depends only on the scene and the spec: elements are emitted in a
//! fixed order with sequential ids and every coordinate is printed with six
//! decimals.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::curve::{EdgeKind, TropicalCurve};
use crate::error::RenderError;
use crate::geometry::Point;
use crate::number::Rational;
use crate::patchwork::{reflect, Embedding, RealTropicalCurve};
use crate::subdivision::DualSubdivision;

/// Width of the longer side of the drawing, in SVG user units.
const CANVAS: f64 = 600.0;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    /// Explicit `[x0, y0, x1, y1]`; computed from the scene when absent.
    pub viewport: Option<[Rational; 4]>,
    /// Padding around the scene as a fraction of its extent.
    pub padding: f64,
    /// Stroke width of a weight-1 edge; weight `w` edges use `w` times this.
    pub stroke: f64,
    /// Label edges of weight at least 2 with their weight.
    pub weight_labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { viewport: None, padding: 0.2, stroke: 2.0, weight_labels: true }
    }
}

pub enum Scene<'a> {
    Curve(&'a TropicalCurve),
    Subdivision(&'a DualSubdivision),
    Patchwork(&'a RealTropicalCurve),
    Amoeba { curve: &'a TropicalCurve, samples: &'a [(f64, f64)] },
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn new(b: [f64; 4]) -> Result<Frame, RenderError> {
        let (w, h) = (b[2] - b[0], b[3] - b[1]);
        if !(w > 0.0 && h > 0.0) {
            return Err(RenderError::EmptyViewport);
        }
        Ok(Frame { x0: b[0], y0: b[1], x1: b[2], y1: b[3], scale: CANVAS / w.max(h) })
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        ((p.0 - self.x0) * self.scale, (self.y1 - p.1) * self.scale)
    }

    fn width(&self) -> f64 {
        (self.x1 - self.x0) * self.scale
    }

    fn height(&self) -> f64 {
        (self.y1 - self.y0) * self.scale
    }

    /// Clips `base + s·dir` for `s ∈ [lo, hi]` to the frame.
    fn clip(&self, base: (f64, f64), dir: (f64, f64), lo: f64, hi: f64) -> Option<((f64, f64), (f64, f64))> {
        let (mut lo, mut hi) = (lo, hi);
        for (d, b, min, max) in [(dir.0, base.0, self.x0, self.x1), (dir.1, base.1, self.y0, self.y1)] {
            if d == 0.0 {
                if b < min || b > max {
                    return None;
                }
            } else {
                let (a, z) = ((min - b) / d, (max - b) / d);
                lo = lo.max(a.min(z));
                hi = hi.min(a.max(z));
            }
        }
        (lo <= hi && lo.is_finite() && hi.is_finite())
            .then(|| ((base.0 + lo * dir.0, base.1 + lo * dir.1), (base.0 + hi * dir.0, base.1 + hi * dir.1)))
    }
}

fn f(x: f64) -> String {
    // avoid printing "-0.000000"
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_string()
    } else {
        s
    }
}

fn bbox(points: impl IntoIterator<Item = (f64, f64)>) -> Option<[f64; 4]> {
    points.into_iter().fold(None, |acc, p| {
        Some(match acc {
            None => [p.0, p.1, p.0, p.1],
            Some([a, b, c, d]) => [a.min(p.0), b.min(p.1), c.max(p.0), d.max(p.1)],
        })
    })
}

/// Pads by a fraction of the extent, at least one unit on every side.
fn pad(b: [f64; 4], fraction: f64) -> [f64; 4] {
    let px = ((b[2] - b[0]) * fraction).max(1.0);
    let py = ((b[3] - b[1]) * fraction).max(1.0);
    [b[0] - px, b[1] - py, b[2] + px, b[3] + py]
}

fn curve_points(c: &TropicalCurve) -> Vec<(f64, f64)> {
    c.vertices.iter().map(|v| v.position.to_f64()).chain(c.lines.iter().map(|l| l.point.to_f64())).collect()
}

fn frame_for(spec: &RenderSpec, auto: Option<[f64; 4]>) -> Result<Frame, RenderError> {
    if !(spec.padding >= 0.0) {
        return Err(RenderError::NegativePadding);
    }
    match &spec.viewport {
        Some(v) => {
            let b = [0, 1, 2, 3].map(|k| v[k].to_f64().unwrap_or(f64::NAN));
            Frame::new(b)
        }
        None => Frame::new(pad(auto.ok_or(RenderError::EmptyScene)?, spec.padding)),
    }
}

struct Doc {
    frame: Frame,
    body: String,
    next_id: usize,
}

impl Doc {
    fn new(frame: Frame) -> Doc {
        Doc { frame, body: String::new(), next_id: 0 }
    }

    fn id(&mut self, prefix: &str) -> String {
        let id = format!("{prefix}-{}", self.next_id);
        self.next_id += 1;
        id
    }

    fn segment(&mut self, class: &str, a: (f64, f64), b: (f64, f64), width: f64) {
        let (a, b) = (self.frame.map(a), self.frame.map(b));
        let id = self.id(class);
        let _ = writeln!(
            self.body,
            r#"<line id="{id}" class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{}"/>"#,
            f(a.0),
            f(a.1),
            f(b.0),
            f(b.1),
            f(width)
        );
    }

    fn dot(&mut self, class: &str, p: (f64, f64), r: f64) {
        let p = self.frame.map(p);
        let id = self.id(class);
        let _ = writeln!(self.body, r#"<circle id="{id}" class="{class}" cx="{}" cy="{}" r="{}"/>"#, f(p.0), f(p.1), f(r));
    }

    fn label(&mut self, p: (f64, f64), text: &str) {
        let p = self.frame.map(p);
        let id = self.id("label");
        let _ = writeln!(
            self.body,
            r#"<text id="{id}" class="weight" x="{}" y="{}">{text}</text>"#,
            f(p.0 + 4.0),
            f(p.1 - 4.0)
        );
    }

    fn finish(self) -> String {
        let (w, h) = (self.frame.width(), self.frame.height());
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            f(w),
            f(h),
            f(w),
            f(h)
        );
        out.push_str(
            "<style>line{stroke:#1f3a93;stroke-linecap:round}line.axis{stroke:#888;stroke-dasharray:4 4}\
             line.cell{stroke:#333}circle.vertex{fill:#1f3a93}circle.lattice{fill:#000}\
             circle.support{fill:#c0392b}circle.sample{fill:#e67e22;opacity:0.5}text.weight{font:12px sans-serif}</style>\n",
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn draw_curve(doc: &mut Doc, c: &TropicalCurve, spec: &RenderSpec) {
    for g in c.edge_geometry() {
        let base = g.base.to_f64();
        let dir = (g.span.0.to_f64().unwrap_or(0.0), g.span.1.to_f64().unwrap_or(0.0));
        let (lo, hi) = match g.kind {
            EdgeKind::Bounded => (0.0, 1.0),
            EdgeKind::Ray => (0.0, f64::INFINITY),
            EdgeKind::Line => (f64::NEG_INFINITY, f64::INFINITY),
        };
        if let Some((a, b)) = doc.frame.clip(base, dir, lo, hi) {
            doc.segment("edge", a, b, spec.stroke * g.weight as f64);
            if spec.weight_labels && g.weight >= 2 {
                doc.label(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0), &g.weight.to_string());
            }
        }
    }
    for v in &c.vertices {
        let p = v.position.to_f64();
        if doc.frame.clip(p, (0.0, 0.0), 0.0, 0.0).is_some() {
            doc.dot("vertex", p, spec.stroke * 1.5);
        }
    }
}

fn draw_subdivision(doc: &mut Doc, s: &DualSubdivision, spec: &RenderSpec) {
    for e in &s.edges {
        let a = (e.start.i as f64, e.start.j as f64);
        let b = (e.end.i as f64, e.end.j as f64);
        doc.segment("cell", a, b, spec.stroke);
    }
    let Some(b) = bbox(s.lattice_points.iter().map(|p| (p.i as f64, p.j as f64))) else { return };
    for i in (b[0] as i64)..=(b[2] as i64) {
        for j in (b[1] as i64)..=(b[3] as i64) {
            doc.dot("lattice", (i as f64, j as f64), 2.0);
        }
    }
    for p in &s.lattice_points {
        doc.dot("support", (p.i as f64, p.j as f64), 4.0);
    }
}

fn placed(emb: &Embedding, p: &Point, q: (u8, u8)) -> (f64, f64) {
    emb.place(p, q).to_f64()
}

fn draw_patchwork(doc: &mut Doc, r: &RealTropicalCurve, spec: &RenderSpec) {
    let c = &r.source;
    let emb = Embedding::new(c);
    let fr = doc.frame;
    doc.segment("axis", (fr.x0, 0.0), (fr.x1, 0.0), 1.0);
    doc.segment("axis", (0.0, fr.y0), (0.0, fr.y1), 1.0);
    let ne = c.edges.len();
    for s in &r.survivors {
        let q = s.quadrant;
        if s.edge < ne {
            let e = &c.edges[s.edge];
            let a = placed(&emb, &c.vertices[e.from].position, q);
            let b = placed(&emb, &c.vertices[e.to].position, q);
            doc.segment("edge", a, b, spec.stroke * e.weight as f64);
        } else {
            let ray = &c.rays[s.edge - ne];
            let base = &c.vertices[ray.base].position;
            let a = placed(&emb, base, q);
            if ray.direction.dx <= 0 && ray.direction.dy <= 0 {
                let b = emb.axis_point(base, ray.direction, q).to_f64();
                doc.segment("edge", a, b, spec.stroke * ray.weight as f64);
                doc.dot("glue", b, spec.stroke * 1.5);
            } else {
                let d = reflect((ray.direction.dx as f64, ray.direction.dy as f64), q);
                if let Some((a, b)) = doc.frame.clip(a, d, 0.0, f64::INFINITY) {
                    doc.segment("edge", a, b, spec.stroke * ray.weight as f64);
                }
            }
        }
    }
}

fn patchwork_box(r: &RealTropicalCurve) -> Option<[f64; 4]> {
    let emb = Embedding::new(&r.source);
    let m = r
        .source
        .vertices
        .iter()
        .map(|v| placed(&emb, &v.position, (0, 0)))
        .fold(None, |acc: Option<f64>, p| Some(acc.unwrap_or(0.0).max(p.0).max(p.1)))?;
    Some([-m, -m, m, m])
}

/// Renders a scene.
pub fn render_svg(scene: &Scene<'_>, spec: &RenderSpec) -> Result<String, RenderError> {
    let auto = match scene {
        Scene::Curve(c) | Scene::Amoeba { curve: c, .. } => bbox(curve_points(c)),
        Scene::Subdivision(s) => bbox(s.lattice_points.iter().map(|p| (p.i as f64, p.j as f64))),
        Scene::Patchwork(r) => patchwork_box(r),
    };
    let frame = frame_for(spec, auto)?;
    let mut doc = Doc::new(frame);
    match scene {
        Scene::Curve(c) => draw_curve(&mut doc, c, spec),
        Scene::Subdivision(s) => draw_subdivision(&mut doc, s, spec),
        Scene::Patchwork(r) => draw_patchwork(&mut doc, r, spec),
        Scene::Amoeba { curve, samples } => {
            for &p in *samples {
                if doc.frame.clip(p, (0.0, 0.0), 0.0, 0.0).is_some() {
                    doc.dot("sample", p, 1.0);
                }
            }
            draw_curve(&mut doc, curve, spec);
        }
    }
    Ok(doc.finish())
}
