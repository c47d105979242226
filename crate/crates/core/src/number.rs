//! The tropical semi-field `T = Q ∪ {-∞}` with `max` as addition and `+` as
//! multiplication, together with the tropical and sign hyperfields.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::ParseError;

/// Exact rational scalar used for every coefficient and coordinate.
pub type Rational = BigRational;

/// Builds the rational `n / d`.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer-valued rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or a decimal literal such as `"-1.5"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && digits.is_empty() {
            return Err(bad());
        }
        if !frac.chars().all(|c| c.is_ascii_digit()) || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mantissa = BigInt::from_str(&format!("{}{}", if digits.is_empty() { "0" } else { digits }, frac))
            .map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An element of the tropical semi-field.
///
/// `Bottom` is the tropical zero `-∞`; it is a separate state and orders
/// strictly below every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropicalNumber {
    Bottom,
    Finite(Rational),
}

impl TropicalNumber {
    /// The tropical multiplicative identity, the rational `0`.
    pub fn one() -> Self {
        TropicalNumber::Finite(Rational::zero())
    }

    /// The tropical additive identity `-∞`.
    pub fn zero() -> Self {
        TropicalNumber::Bottom
    }

    pub fn from_int(n: i64) -> Self {
        TropicalNumber::Finite(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        TropicalNumber::Finite(rat(n, d))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, TropicalNumber::Bottom)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropicalNumber::Bottom => None,
            TropicalNumber::Finite(q) => Some(q),
        }
    }

    pub fn into_finite(self) -> Option<Rational> {
        match self {
            TropicalNumber::Bottom => None,
            TropicalNumber::Finite(q) => Some(q),
        }
    }

    /// Tropical addition, `max(self, other)`.
    pub fn add(&self, other: &Self) -> Self {
        trop_add(self, other)
    }

    /// Tropical multiplication, classical `self + other`.
    pub fn mul(&self, other: &Self) -> Self {
        trop_mul(self, other)
    }
}

impl From<Rational> for TropicalNumber {
    fn from(q: Rational) -> Self {
        TropicalNumber::Finite(q)
    }
}

impl PartialOrd for TropicalNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropicalNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropicalNumber::Bottom, TropicalNumber::Bottom) => Ordering::Equal,
            (TropicalNumber::Bottom, _) => Ordering::Less,
            (_, TropicalNumber::Bottom) => Ordering::Greater,
            (TropicalNumber::Finite(a), TropicalNumber::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for TropicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalNumber::Bottom => f.write_str("-inf"),
            TropicalNumber::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

impl FromStr for TropicalNumber {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" | "-∞" => Ok(TropicalNumber::Bottom),
            other => parse_rational(other).map(TropicalNumber::Finite),
        }
    }
}

/// `"x + y" = max(x, y)`.
pub fn trop_add(x: &TropicalNumber, y: &TropicalNumber) -> TropicalNumber {
    if x >= y {
        x.clone()
    } else {
        y.clone()
    }
}

/// `"x × y" = x + y`; `-∞` absorbs.
pub fn trop_mul(x: &TropicalNumber, y: &TropicalNumber) -> TropicalNumber {
    match (x, y) {
        (TropicalNumber::Finite(a), TropicalNumber::Finite(b)) => TropicalNumber::Finite(a + b),
        _ => TropicalNumber::Bottom,
    }
}

/// `"x^k" = k·x`, with `x^0 = 0` for every `x` including `-∞`.
pub fn trop_pow(x: &TropicalNumber, k: u32) -> TropicalNumber {
    if k == 0 {
        return TropicalNumber::one();
    }
    match x {
        TropicalNumber::Bottom => TropicalNumber::Bottom,
        TropicalNumber::Finite(a) => TropicalNumber::Finite(a * int(i64::from(k))),
    }
}

/// Tropical sum of an arbitrary sequence; `-∞` for the empty sum.
pub fn trop_sum<'a>(xs: impl IntoIterator<Item = &'a TropicalNumber>) -> TropicalNumber {
    xs.into_iter().fold(TropicalNumber::Bottom, |acc, x| trop_add(&acc, x))
}

/// A down-closed subset of `T` produced by tropical hyperfield addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DownSet {
    /// `{value}`
    Singleton(TropicalNumber),
    /// `{z ∈ T | z ≤ upper}`
    ClosedRay(TropicalNumber),
}

impl DownSet {
    pub fn contains(&self, z: &TropicalNumber) -> bool {
        match self {
            DownSet::Singleton(v) => z == v,
            DownSet::ClosedRay(u) => z <= u,
        }
    }

    /// Largest element of the set.
    pub fn max(&self) -> &TropicalNumber {
        match self {
            DownSet::Singleton(v) | DownSet::ClosedRay(v) => v,
        }
    }

    pub fn contains_bottom(&self) -> bool {
        self.contains(&TropicalNumber::Bottom)
    }

    // `{z ≤ -∞}` is the singleton `{-∞}`; keep one representation.
    fn normalized(self) -> Self {
        match self {
            DownSet::ClosedRay(TropicalNumber::Bottom) => DownSet::Singleton(TropicalNumber::Bottom),
            other => other,
        }
    }

    /// The hyper-sum `self ⊞ z`: the union of `s ⊞ z` over `s ∈ self`.
    pub fn hyper_add_element(&self, z: &TropicalNumber) -> DownSet {
        match self {
            DownSet::Singleton(s) => hyper_add(s, z),
            DownSet::ClosedRay(u) => {
                if z > u {
                    DownSet::Singleton(z.clone())
                } else {
                    DownSet::ClosedRay(u.clone()).normalized()
                }
            }
        }
    }

    /// The hyper-sum of two down-sets.
    pub fn hyper_add_set(&self, other: &DownSet) -> DownSet {
        match other {
            DownSet::Singleton(z) => self.hyper_add_element(z),
            DownSet::ClosedRay(u) => match self {
                DownSet::Singleton(s) => other.hyper_add_element(s),
                DownSet::ClosedRay(v) => DownSet::ClosedRay(std::cmp::max(u, v).clone()).normalized(),
            },
        }
    }
}

impl fmt::Display for DownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DownSet::Singleton(v) => write!(f, "{{{v}}}"),
            DownSet::ClosedRay(u) => write!(f, "[-inf, {u}]"),
        }
    }
}

/// Tropical hyperfield addition: `{max(x,y)}` when `x ≠ y`, `{z ≤ x}` when `x = y`.
pub fn hyper_add(x: &TropicalNumber, y: &TropicalNumber) -> DownSet {
    if x == y {
        DownSet::ClosedRay(x.clone()).normalized()
    } else {
        DownSet::Singleton(trop_add(x, y))
    }
}

/// Element of the sign hyperfield `{0, +1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Zero, Sign::Positive, Sign::Negative];

    pub fn of(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Negative),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Positive),
            _ => None,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * other.as_i8()).expect("product of signs is a sign")
    }
}

/// Multivalued addition of the sign hyperfield.
///
/// Returned in the fixed order `0, +1, -1`.
pub fn sign_hyper_add(a: Sign, b: Sign) -> Vec<Sign> {
    use Sign::*;
    match (a, b) {
        (Zero, s) | (s, Zero) => vec![s],
        (Positive, Positive) => vec![Positive],
        (Negative, Negative) => vec![Negative],
        (Positive, Negative) | (Negative, Positive) => vec![Zero, Positive, Negative],
    }
}
