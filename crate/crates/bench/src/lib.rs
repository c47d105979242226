//! Deterministic inputs for the benchmarks.

use tropica::number::int;
use tropica::{BiPoly, CoefficientFamily, UniPoly};

/// A univariate polynomial of degree `n` with pseudo-random integer coefficients.
pub fn uni(n: u32) -> UniPoly {
    let mut state = 0x9e37_79b9_u64;
    let terms: Vec<(u32, i64)> = (0..=n)
        .map(|i| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            (i, (state >> 33) as i64 % 1000 - 500)
        })
        .collect();
    UniPoly::from_ints(&terms)
}

/// A dense degree `d` polynomial with coefficients `-(i² + ij + j²)`, whose curve is smooth.
pub fn honeycomb(d: u32) -> BiPoly {
    let terms: Vec<((u32, u32), i64)> = (0..=d)
        .flat_map(|i| (0..=d - i).map(move |j| ((i, j), -i64::from(i * i + i * j + j * j))))
        .collect();
    BiPoly::from_ints(&terms)
}

/// The same polynomial with the origin moved to `(dx, dy)`, for generic intersections.
pub fn honeycomb_shifted(d: u32, dx: i64, dy: i64) -> BiPoly {
    let terms: Vec<((u32, u32), _)> = (0..=d)
        .flat_map(|i| (0..=d - i).map(move |j| (i, j)))
        .map(|(i, j)| {
            let base = -i64::from(i * i + i * j + j * j);
            ((i, j), int(base - dx * i64::from(i) - dy * i64::from(j)))
        })
        .collect();
    BiPoly::from_terms(&terms)
}

/// `x - y + 1` with constant coefficients.
pub fn line_family() -> CoefficientFamily {
    CoefficientFamily::constant(&[((1, 0), (1, 0)), ((0, 1), (-1, 0)), ((0, 0), (1, 0))]).expect("valid family")
}
