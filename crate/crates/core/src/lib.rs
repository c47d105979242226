//! Exact plane tropical geometry.
//!
//! Coefficients and coordinates are arbitrary-precision rationals, so every
//! geometric predicate (hull membership, crossing tests, balancing) is exact.
//! Floating point appears only in [`dequant`] and [`amoeba`].
//!
//! The crate covers max-plus arithmetic and the tropical hyperfields
//! ([`number`]), univariate polynomials and their roots ([`univariate`]),
//! bivariate polynomials, dual subdivisions and curves ([`bipoly`],
//! [`subdivision`], [`curve`], [`balance`]), stable intersection
//! ([`intersect`]), patchworking ([`patchwork`]), amoebas ([`amoeba`]),
//! hyperfield evaluation ([`hyper`]) and JSON/SVG output ([`io`], [`svg`]).

pub mod amoeba;
pub mod balance;
pub mod bipoly;
pub mod curve;
pub mod dequant;
pub mod error;
pub mod geometry;
pub mod hyper;
pub mod intersect;
pub mod io;
pub mod number;
pub mod patchwork;
pub mod subdivision;
pub mod svg;
pub mod univariate;

pub use amoeba::{
    convergence_report, log_map, sample_amoeba, AmoebaSample, CoefficientFamily, ConvergenceReport, GridSpec,
    SeriesTerm,
};
pub use balance::{check_balancing, BalanceReport};
pub use bipoly::BiPoly;
pub use curve::{curve_from_dual_description, degree, tropical_curve, DegreeReport, TropicalCurve};
pub use dequant::dequant_add;
pub use error::Error;
pub use geometry::{Direction, LatticePoint, Point};
pub use hyper::{hyper_eval_uni, line_graph_with_tail};
pub use intersect::{
    bezout_check, stable_intersections, transverse_intersections, union_curve, BezoutReport, EpsPoint,
    IntersectionPoint,
};
pub use io::Wire;
pub use number::{
    hyper_add, sign_hyper_add, trop_add, trop_mul, trop_pow, DownSet, Rational, Sign, TropicalNumber,
};
pub use patchwork::{
    arrangement_stats, patchwork_enumerate, patchwork_validate, ArrangementStats, QuadrantCopy, RealTropicalCurve,
};
pub use subdivision::{dual_subdivision, DualSubdivision};
pub use svg::{render_svg, RenderSpec, Scene};
pub use univariate::{
    canonicalize, eval_uni, expand_linear_factors, factor_uni, roots_uni, RootList, UniPoly,
};
