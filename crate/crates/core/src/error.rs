use thiserror::Error;

use crate::geometry::LatticePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("not a rational literal: {0:?}")]
    Rational(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported schema tag {0:?}, expected \"tropica/1\"")]
    Schema(String),
    #[error("invalid value: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json(e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DequantError {
    #[error("the base t must be > 1")]
    BaseNotAboveOne,
    #[error("requested {requested} correct digits; double precision guarantees at most {available}")]
    PrecisionUnavailable { requested: u32, available: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial has no finite coefficient")]
    AllBottom,
    #[error("exponent {0:?} appears more than once")]
    DuplicateExponent(Vec<u32>),
    #[error("root orders must be positive")]
    ZeroOrder,
    #[error("leading coefficient must be finite")]
    BottomLeading,
}

/// Failures while rebuilding a curve from a subdivision.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("cell {0} is out of range")]
    UnknownCell(usize),
    #[error("edge {edge} between lattice points {start:?} and {end:?} has no length")]
    MissingLength { edge: usize, start: LatticePoint, end: LatticePoint },
    #[error("edge {edge} has non-positive length")]
    NonPositiveLength { edge: usize },
    #[error("cells do not tile the Newton polygon: cell area {cells} (doubled) vs polygon area {polygon} (doubled)")]
    AreaMismatch { cells: i64, polygon: i64 },
    #[error("cells {0:?} are not reachable through interior edges")]
    Disconnected(Vec<usize>),
    #[error("vertex positions do not close up around the cycle of cells {cycle:?}")]
    InconsistentCycle { cycle: Vec<usize> },
    #[error("the subdivision has no two-dimensional cells")]
    NoCells,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BalanceError {
    #[error("{item} has non-primitive or zero direction ({dx}, {dy})")]
    NonPrimitive { item: String, dx: i64, dy: i64 },
    #[error("{item} references missing vertex {vertex}")]
    MissingVertex { item: String, vertex: usize },
    #[error("{item} direction does not point from its first endpoint to its second")]
    DirectionMismatch { item: String },
    #[error("{item} has zero weight")]
    ZeroWeight { item: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NonTransverseReason {
    #[error("a vertex of one curve lies on the other curve")]
    VertexOnCurve,
    #[error("two parallel edges overlap")]
    OverlappingParallelEdges,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectError {
    #[error("curves do not meet transversally: {reason}; use stable intersection")]
    NonTransverse { reason: NonTransverseReason },
    #[error("translation direction ({0}, {1}) is parallel to an edge of one of the curves")]
    InadmissibleDirection(i64, i64),
    #[error("Bezout check declined: {0}")]
    NonStandardSupport(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatchworkError {
    #[error("edge {edge} has even weight {weight}")]
    EvenWeight { edge: usize, weight: u64 },
    #[error("vertex {vertex} is dual to a non-triangular cell ({valence} incident edges)")]
    NonTriangularCell { vertex: usize, valence: usize },
    #[error("curve contains full lines; patchworking needs a two-dimensional Newton polygon")]
    DegenerateCurve,
    #[error("survivor entry references unknown edge {0}")]
    UnknownEdge(usize),
    #[error("quadrant ({0}, {1}) is not a pair of bits")]
    BadQuadrant(u8, u8),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AmoebaError {
    #[error("the base t must be > 1")]
    BaseNotAboveOne,
    #[error("degree in y is {0}; sampling supports degree at most 2")]
    DegreeTooHigh(u32),
    #[error("the family has no term involving y, so it cannot be solved for y")]
    ConstantInY,
    #[error("point {0} has a zero coordinate")]
    ZeroCoordinate(usize),
    #[error("coefficient series for exponent ({0}, {1}) is empty or has a vanishing top term")]
    BadSeries(u32, u32),
    #[error("the tropical limit has a single monomial, so its curve is empty")]
    EmptyLimit,
    #[error("no samples survived the residual filter")]
    NoSamples,
    #[error("invalid grid: {0}")]
    BadGrid(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("viewport has zero area")]
    EmptyViewport,
    #[error("scene is empty and no viewport was given")]
    EmptyScene,
    #[error("ray clip padding must be non-negative")]
    NegativePadding,
}

/// Umbrella error for callers that drive several modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Dequant(#[from] DequantError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Balance(#[from] BalanceError),
    #[error(transparent)]
    Intersect(#[from] IntersectError),
    #[error(transparent)]
    Patchwork(#[from] PatchworkError),
    #[error(transparent)]
    Amoeba(#[from] AmoebaError),
    #[error(transparent)]
    Render(#[from] RenderError),
}
