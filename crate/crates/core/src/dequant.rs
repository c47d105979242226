//! Maslov dequantisation: the family `x +_t y = log_t(t^x + t^y)`.
//!
//! This is the only floating-point corner of the semi-field kernel. Values
//! are computed as `max(x,y) + log_t(1 + t^{-|x-y|})`, which never overflows
//! and keeps the correction term accurate through `ln_1p`.

use num_traits::{One, Signed, ToPrimitive};

use crate::error::DequantError;
use crate::number::Rational;

/// Largest number of significant decimal digits a double reliably carries.
pub const MAX_PRECISION_DIGITS: u32 = 15;

/// `log_t(t^x + t^y)` for `t > 1`.
///
/// `precision` is the number of correct significant digits requested; up to
/// [`MAX_PRECISION_DIGITS`] are available. The result always lies in
/// `[max(x,y), max(x,y) + log_t 2]`.
pub fn dequant_add(x: &Rational, y: &Rational, t: &Rational, precision: u32) -> Result<f64, DequantError> {
    if *t <= Rational::one() {
        return Err(DequantError::BaseNotAboveOne);
    }
    if precision == 0 || precision > MAX_PRECISION_DIGITS {
        return Err(DequantError::PrecisionUnavailable { requested: precision, available: MAX_PRECISION_DIGITS });
    }
    let top = std::cmp::max(x, y).to_f64().unwrap_or(f64::NAN);
    let gap = (x - y).abs().to_f64().unwrap_or(f64::INFINITY);
    let ln_t = ln_rational(t);
    let correction = (-gap * ln_t).exp().ln_1p() / ln_t;
    Ok(top + correction)
}

/// `log_t 2`, the width of the dequantisation sandwich.
pub fn sandwich_width(t: &Rational) -> Result<f64, DequantError> {
    if *t <= Rational::one() {
        return Err(DequantError::BaseNotAboveOne);
    }
    Ok(std::f64::consts::LN_2 / ln_rational(t))
}

/// Natural logarithm of a positive rational, robust to huge numerators.
pub(crate) fn ln_rational(q: &Rational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
    let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
    if n.is_finite() && d.is_finite() {
        (n / d).ln()
    } else {
        big_ln(q.numer()) - big_ln(q.denom())
    }
}

fn big_ln(n: &num_bigint::BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 60;
    let head = (n >> shift).to_f64().unwrap_or(f64::NAN);
    head.ln() + shift as f64 * std::f64::consts::LN_2
}
