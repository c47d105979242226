//! Amoebas `Log_t(V(P_t))` of complex curves and their convergence to
//! tropical limits.
//!
//! Sampling solves `P_t(x, ·) = 0` in closed form, so the family must have
//! degree at most 2 in `y`. Everything here is double precision; the
//! tolerances are the public constants below.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::bipoly::BiPoly;
use crate::curve::{tropical_curve, EdgeKind, TropicalCurve};
use crate::dequant::ln_rational;
use crate::error::AmoebaError;
use crate::geometry::LatticePoint;
use crate::number::Rational;

/// Samples are kept when `|P_t(x,y)| / (1 + max |monomial|)` is below this.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

pub const DEFAULT_MODULI: usize = 128;
pub const DEFAULT_PHASES: usize = 64;
/// Padding, in tropical units, around the limit curve's vertices.
pub const DEFAULT_PADDING: f64 = 2.0;

/// One term `β·t^r` of a coefficient series, `β = re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTerm {
    pub r: Rational,
    pub beta: (Rational, Rational),
}

/// Coefficients `α_{i,j}(t) = Σ β_{i,j,r} t^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFamily {
    terms: BTreeMap<LatticePoint, Vec<SeriesTerm>>,
}

impl CoefficientFamily {
    /// Merges terms with equal `r` and checks that every series has a
    /// nonvanishing top term.
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), Vec<SeriesTerm>)>) -> Result<Self, AmoebaError> {
        let mut out = BTreeMap::new();
        for ((i, j), series) in terms {
            let mut merged: BTreeMap<Rational, (Rational, Rational)> = BTreeMap::new();
            for s in series {
                let e = merged.entry(s.r).or_insert_with(|| (Rational::zero(), Rational::zero()));
                e.0 += s.beta.0;
                e.1 += s.beta.1;
            }
            let top_ok = merged.values().next_back().is_some_and(|b| !(b.0.is_zero() && b.1.is_zero()));
            if !top_ok {
                return Err(AmoebaError::BadSeries(i, j));
            }
            let series = merged
                .into_iter()
                .filter(|(_, b)| !(b.0.is_zero() && b.1.is_zero()))
                .map(|(r, beta)| SeriesTerm { r, beta })
                .collect();
            out.insert(LatticePoint::new(i64::from(i), i64::from(j)), series);
        }
        if out.is_empty() {
            return Err(AmoebaError::EmptyLimit);
        }
        Ok(CoefficientFamily { terms: out })
    }

    /// The family with constant coefficients `β·t^0`.
    pub fn constant(terms: &[((u32, u32), (i64, i64))]) -> Result<Self, AmoebaError> {
        Self::new(terms.iter().map(|&(e, (re, im))| {
            (e, vec![SeriesTerm { r: Rational::zero(), beta: (Rational::from_integer(re.into()), Rational::from_integer(im.into())) }])
        }))
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, &[SeriesTerm])> {
        self.terms.iter().map(|(p, s)| (*p, s.as_slice()))
    }

    /// The tropical polynomial with `a_{i,j} = max r`.
    pub fn tropical_limit(&self) -> BiPoly {
        BiPoly::from_map(
            self.terms
                .iter()
                .map(|(p, s)| (*p, s.last().expect("nonempty series").r.clone()))
                .collect(),
        )
    }

    pub fn degree_in_y(&self) -> u32 {
        self.terms.keys().map(|p| p.j as u32).max().unwrap_or(0)
    }

    /// Numerical coefficients at base `t`.
    fn at(&self, ln_t: f64) -> Vec<(LatticePoint, Complex64)> {
        self.terms
            .iter()
            .map(|(p, series)| {
                let v = series
                    .iter()
                    .map(|s| {
                        let scale = (s.r.to_f64().unwrap_or(0.0) * ln_t).exp();
                        Complex64::new(
                            s.beta.0.to_f64().unwrap_or(0.0) * scale,
                            s.beta.1.to_f64().unwrap_or(0.0) * scale,
                        )
                    })
                    .sum();
                (*p, v)
            })
            .collect()
    }
}

/// Coordinate-wise `log_t |·|` of complex points.
pub fn log_map(points: &[(Complex64, Complex64)], t: f64) -> Result<Vec<(f64, f64)>, AmoebaError> {
    if !(t > 1.0) {
        return Err(AmoebaError::BaseNotAboveOne);
    }
    let ln_t = t.ln();
    points
        .iter()
        .enumerate()
        .map(|(k, (x, y))| {
            if x.norm() == 0.0 || y.norm() == 0.0 {
                Err(AmoebaError::ZeroCoordinate(k))
            } else {
                Ok((x.norm().ln() / ln_t, y.norm().ln() / ln_t))
            }
        })
        .collect()
}

/// An axis-aligned box in tropical coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Window {
    pub fn contains(&self, p: (f64, f64)) -> bool {
        p.0 >= self.x0 && p.0 <= self.x1 && p.1 >= self.y0 && p.1 <= self.y1
    }
}

/// Sampling grid: `moduli` values `u` spread uniformly over the window's
/// x-range, each giving `|x| = t^u`, times `phases` arguments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub moduli: usize,
    pub phases: usize,
    pub padding: f64,
    /// Overrides the window derived from the limit curve.
    pub window: Option<Window>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { moduli: DEFAULT_MODULI, phases: DEFAULT_PHASES, padding: DEFAULT_PADDING, window: None }
    }
}

impl GridSpec {
    fn check(&self) -> Result<(), AmoebaError> {
        if self.moduli < 2 || self.phases < 1 {
            return Err(AmoebaError::BadGrid(format!(
                "need at least 2 moduli and 1 phase, got {} and {}",
                self.moduli, self.phases
            )));
        }
        if !(self.padding >= 0.0) {
            return Err(AmoebaError::BadGrid("padding must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmoebaSample {
    pub t: f64,
    pub points: Vec<(f64, f64)>,
    pub window: Window,
    pub moduli: usize,
    pub phases: usize,
    /// Largest normalised residual among kept samples.
    pub max_residual: f64,
    /// Roots discarded by the residual filter or for vanishing coordinates.
    pub rejected: usize,
}

/// Vertex bounding box of the curve (or of line anchor points) padded on all sides.
pub fn curve_window(c: &TropicalCurve, padding: f64) -> Option<Window> {
    let pts: Vec<(f64, f64)> = c
        .vertices
        .iter()
        .map(|v| v.position.to_f64())
        .chain(c.lines.iter().map(|l| l.point.to_f64()))
        .collect();
    if pts.is_empty() {
        return None;
    }
    let fold = |f: fn(&(f64, f64)) -> f64, init: f64, pick: fn(f64, f64) -> f64| pts.iter().map(f).fold(init, pick);
    Some(Window {
        x0: fold(|p| p.0, f64::INFINITY, f64::min) - padding,
        y0: fold(|p| p.1, f64::INFINITY, f64::min) - padding,
        x1: fold(|p| p.0, f64::NEG_INFINITY, f64::max) + padding,
        y1: fold(|p| p.1, f64::NEG_INFINITY, f64::max) + padding,
    })
}

fn limit_curve(f: &CoefficientFamily) -> Result<TropicalCurve, AmoebaError> {
    let c = tropical_curve(&f.tropical_limit());
    if c.is_empty() {
        return Err(AmoebaError::EmptyLimit);
    }
    Ok(c)
}

fn base_ln(t: &Rational) -> Result<f64, AmoebaError> {
    if *t <= Rational::one() {
        return Err(AmoebaError::BaseNotAboveOne);
    }
    Ok(ln_rational(t))
}

// P_t(x, y) = a(x) + b(x)·y + c(x)·y²
fn y_roots(a: Complex64, b: Complex64, c: Complex64) -> Vec<Complex64> {
    if c == Complex64::zero() {
        if b == Complex64::zero() {
            return Vec::new();
        }
        return vec![-a / b];
    }
    let disc = (b * b - 4.0 * a * c).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 { -(b + disc) / 2.0 } else { -(b - disc) / 2.0 };
    if q == Complex64::zero() {
        return vec![Complex64::zero(), Complex64::zero()];
    }
    vec![q / c, a / q]
}

/// Samples the amoeba of `P_t` over the grid.
pub fn sample_amoeba(f: &CoefficientFamily, t: &Rational, grid: &GridSpec) -> Result<AmoebaSample, AmoebaError> {
    let ln_t = base_ln(t)?;
    grid.check()?;
    match f.degree_in_y() {
        0 => return Err(AmoebaError::ConstantInY),
        d if d > 2 => return Err(AmoebaError::DegreeTooHigh(d)),
        _ => {}
    }
    let window = match grid.window {
        Some(w) => w,
        None => curve_window(&limit_curve(f)?, grid.padding).expect("nonempty curve has a window"),
    };
    let coeffs = f.at(ln_t);
    let mut points = Vec::new();
    let mut max_residual: f64 = 0.0;
    let mut rejected = 0;
    for m in 0..grid.moduli {
        let u = window.x0 + (window.x1 - window.x0) * m as f64 / (grid.moduli - 1) as f64;
        let modulus = (u * ln_t).exp();
        for k in 0..grid.phases {
            let phase = std::f64::consts::TAU * k as f64 / grid.phases as f64;
            let x = Complex64::from_polar(modulus, phase);
            let mut parts = [Complex64::zero(); 3];
            for (p, a) in &coeffs {
                parts[p.j as usize] += a * x.powi(p.i as i32);
            }
            for y in y_roots(parts[0], parts[1], parts[2]) {
                let mut value = Complex64::zero();
                let mut biggest: f64 = 0.0;
                for (p, a) in &coeffs {
                    let mono = a * x.powi(p.i as i32) * y.powi(p.j as i32);
                    value += mono;
                    biggest = biggest.max(mono.norm());
                }
                let residual = value.norm() / (1.0 + biggest);
                if y.norm() == 0.0 || !y.norm().is_finite() || !(residual < RESIDUAL_TOLERANCE) {
                    rejected += 1;
                    continue;
                }
                max_residual = max_residual.max(residual);
                points.push((u, y.norm().ln() / ln_t));
            }
        }
    }
    Ok(AmoebaSample {
        t: t.to_f64().unwrap_or(f64::NAN),
        points,
        window,
        moduli: grid.moduli,
        phases: grid.phases,
        max_residual,
        rejected,
    })
}

/// A piece of the limit curve in doubles: base point, direction and the
/// parameter range `[lo, hi]` (infinite for rays and lines).
#[derive(Clone, Copy, Debug)]
struct FloatPiece {
    base: (f64, f64),
    dir: (f64, f64),
    lo: f64,
    hi: f64,
}

fn float_pieces(c: &TropicalCurve) -> Vec<FloatPiece> {
    c.edge_geometry()
        .into_iter()
        .map(|g| {
            let base = g.base.to_f64();
            let dir = (g.span.0.to_f64().unwrap_or(0.0), g.span.1.to_f64().unwrap_or(0.0));
            let (lo, hi) = match g.kind {
                EdgeKind::Bounded => (0.0, 1.0),
                EdgeKind::Ray => (0.0, f64::INFINITY),
                EdgeKind::Line => (f64::NEG_INFINITY, f64::INFINITY),
            };
            FloatPiece { base, dir, lo, hi }
        })
        .collect()
}

fn piece_distance(piece: &FloatPiece, p: (f64, f64)) -> f64 {
    let (dx, dy) = piece.dir;
    let (wx, wy) = (p.0 - piece.base.0, p.1 - piece.base.1);
    let s = ((wx * dx + wy * dy) / (dx * dx + dy * dy)).clamp(piece.lo, piece.hi);
    let (qx, qy) = (piece.base.0 + s * dx, piece.base.1 + s * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

/// Euclidean distance from `p` to the curve.
pub fn distance_to_curve(c: &TropicalCurve, p: (f64, f64)) -> f64 {
    float_pieces(c).iter().map(|q| piece_distance(q, p)).fold(f64::INFINITY, f64::min)
}

/// Points along the curve inside the window, spaced by `step`.
pub fn curve_net(c: &TropicalCurve, window: &Window, step: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for piece in float_pieces(c) {
        let len = (piece.dir.0.powi(2) + piece.dir.1.powi(2)).sqrt();
        // clip the parameter range to the window (Liang–Barsky)
        let (mut lo, mut hi) = (piece.lo, piece.hi);
        for (d, b, min, max) in [
            (piece.dir.0, piece.base.0, window.x0, window.x1),
            (piece.dir.1, piece.base.1, window.y0, window.y1),
        ] {
            if d == 0.0 {
                if b < min || b > max {
                    lo = 1.0;
                    hi = 0.0;
                }
            } else {
                let (a, z) = ((min - b) / d, (max - b) / d);
                lo = lo.max(a.min(z));
                hi = hi.min(a.max(z));
            }
        }
        if lo > hi {
            continue;
        }
        let n = (((hi - lo) * len / step).ceil() as usize).max(1);
        for k in 0..=n {
            let s = lo + (hi - lo) * k as f64 / n as f64;
            out.push((piece.base.0 + s * piece.dir.0, piece.base.1 + s * piece.dir.1));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub t: f64,
    /// Largest distance from a sample to the limit curve.
    pub dev: f64,
    /// Largest distance from a point of the limit curve in the window to the nearest sample.
    pub cov: f64,
    pub samples: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub strictly_decreasing: bool,
    /// Least-squares fit of `dev(t) ≈ C / ln t`.
    pub fit_c: f64,
    /// Smallest `C` with `dev(t) ≤ C / ln t` for every row.
    pub envelope_c: f64,
    pub window: Window,
}

/// Spacing of the coverage net as a fraction of the window width.
const NET_DIVISIONS: f64 = 200.0;

/// Deviation and coverage of the sampled amoebas for each `t`.
pub fn convergence_report(f: &CoefficientFamily, ts: &[Rational], grid: &GridSpec) -> Result<ConvergenceReport, AmoebaError> {
    let curve = limit_curve(f)?;
    let window = grid.window.unwrap_or_else(|| curve_window(&curve, grid.padding).expect("nonempty curve"));
    let grid = GridSpec { window: Some(window), ..*grid };
    let net = curve_net(&curve, &window, (window.x1 - window.x0).max(window.y1 - window.y0) / NET_DIVISIONS);
    let mut rows = Vec::new();
    for t in ts {
        let sample = sample_amoeba(f, t, &grid)?;
        if sample.points.is_empty() {
            return Err(AmoebaError::NoSamples);
        }
        let mut points = sample.points.clone();
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        let dev = points.iter().map(|&p| distance_to_curve(&curve, p)).fold(0.0, f64::max);
        let cov = net
            .iter()
            .map(|q| points.iter().map(|p| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max);
        rows.push(ConvergenceRow { t: sample.t, dev, cov, samples: points.len(), max_residual: sample.max_residual });
    }
    let strictly_decreasing = rows.windows(2).all(|w| w[1].dev < w[0].dev);
    let inv: Vec<f64> = rows.iter().map(|r| 1.0 / r.t.ln()).collect();
    let num: f64 = rows.iter().zip(&inv).map(|(r, l)| r.dev * l).sum();
    let den: f64 = inv.iter().map(|l| l * l).sum();
    let fit_c = if den > 0.0 { num / den } else { 0.0 };
    let envelope_c = rows.iter().map(|r| r.dev * r.t.ln()).fold(0.0, f64::max);
    Ok(ConvergenceReport { rows, strictly_decreasing, fit_c, envelope_c, window })
}
