//! Univariate tropical polynomials `P(x) = max_i (a_i + i·x)`.
//!
//! Roots are the corners of the graph of `P`. A polynomial whose lowest
//! finite coefficient sits at exponent `m > 0` factors as `"x^m Q(x)"`; the
//! factor `"x"` has its root at `-∞`, so we report `-∞` as a root of order
//! `m`. With that convention every polynomial of degree `d` has exactly `d`
//! roots counted with order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::PolyError;
use crate::number::{int, trop_add, trop_mul, Rational, TropicalNumber};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    // exponent -> finite coefficient; Bottom coefficients are never stored
    coeffs: BTreeMap<u32, Rational>,
}

impl UniPoly {
    /// Builds a polynomial from `(exponent, coefficient)` pairs, pruning `-∞`.
    pub fn new(terms: impl IntoIterator<Item = (u32, TropicalNumber)>) -> Result<Self, PolyError> {
        let mut coeffs = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (i, a) in terms {
            if !seen.insert(i) {
                return Err(PolyError::DuplicateExponent(vec![i]));
            }
            if let TropicalNumber::Finite(q) = a {
                coeffs.insert(i, q);
            }
        }
        if coeffs.is_empty() {
            return Err(PolyError::AllBottom);
        }
        Ok(UniPoly { coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(terms: &[(u32, i64)]) -> Self {
        Self::new(terms.iter().map(|&(i, a)| (i, TropicalNumber::from_int(a)))).expect("nonempty integer polynomial")
    }

    fn from_map(coeffs: BTreeMap<u32, Rational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        UniPoly { coeffs }
    }

    pub fn degree(&self) -> u32 {
        *self.coeffs.keys().next_back().expect("nonempty")
    }

    pub fn min_exponent(&self) -> u32 {
        *self.coeffs.keys().next().expect("nonempty")
    }

    pub fn coeff(&self, i: u32) -> TropicalNumber {
        self.coeffs.get(&i).cloned().map_or(TropicalNumber::Bottom, TropicalNumber::Finite)
    }

    /// Finite terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&i, a)| (i, a))
    }

    /// Value of each monomial `a_i + i·x`, in exponent order.
    pub fn monomial_values<'a>(&'a self, x: &'a TropicalNumber) -> impl Iterator<Item = (u32, TropicalNumber)> + 'a {
        self.terms().map(move |(i, a)| {
            let xi = crate::number::trop_pow(x, i);
            (i, trop_mul(&TropicalNumber::Finite(a.clone()), &xi))
        })
    }

    /// Tropical product (max-plus convolution of coefficients).
    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let v = a + b;
                out.entry(i + j)
                    .and_modify(|cur| {
                        if v > *cur {
                            *cur = v.clone();
                        }
                    })
                    .or_insert(v);
            }
        }
        UniPoly::from_map(out)
    }
}

/// `P(x) = max_i (a_i + i·x)`; at `x = -∞` this is `a_0` (or `-∞`).
pub fn eval_uni(p: &UniPoly, x: &TropicalNumber) -> TropicalNumber {
    p.monomial_values(x).fold(TropicalNumber::Bottom, |acc, (_, v)| trop_add(&acc, &v))
}

/// Exponents whose monomials attain the maximum at the finite point `x`.
pub fn maximizing_exponents(p: &UniPoly, x: &Rational) -> Vec<u32> {
    let values: Vec<(u32, Rational)> = p.terms().map(|(i, a)| (i, a + int(i64::from(i)) * x)).collect();
    let best = values.iter().map(|(_, v)| v).max().expect("nonempty").clone();
    values.into_iter().filter(|(_, v)| *v == best).map(|(i, _)| i).collect()
}

/// Vertices of the least concave majorant of the points `(i, a_i)`.
pub fn concave_majorant(p: &UniPoly) -> Vec<(u32, Rational)> {
    let mut hull: Vec<(u32, Rational)> = Vec::new();
    for (i, a) in p.terms() {
        while hull.len() >= 2 {
            let (i0, a0) = &hull[hull.len() - 2];
            let (i1, a1) = &hull[hull.len() - 1];
            // drop the middle point unless it is strictly above the chord
            let lhs = (a1 - a0) * int(i64::from(i - i0));
            let rhs = (a - a0) * int(i64::from(i1 - i0));
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((i, a.clone()));
    }
    hull
}

/// The largest polynomial defining the same function as `p`.
///
/// Every integer exponent between the lowest and highest finite exponent gets
/// the value of the concave majorant there.
pub fn canonicalize(p: &UniPoly) -> UniPoly {
    let hull = concave_majorant(p);
    let mut out = BTreeMap::new();
    out.insert(hull[0].0, hull[0].1.clone());
    for w in hull.windows(2) {
        let (i0, a0) = &w[0];
        let (i1, a1) = &w[1];
        let span = int(i64::from(i1 - i0));
        for i in (i0 + 1)..=*i1 {
            let value = a0 + (a1 - a0) * int(i64::from(i - i0)) / &span;
            out.insert(i, value);
        }
    }
    UniPoly::from_map(out)
}

/// A root with its order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub root: TropicalNumber,
    pub order: u32,
}

/// Distinct roots in increasing order, `-∞` first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootList {
    pub entries: Vec<Root>,
}

impl RootList {
    pub fn new(mut entries: Vec<Root>) -> Self {
        entries.sort_by(|a, b| a.root.cmp(&b.root));
        RootList { entries }
    }

    pub fn total_order(&self) -> u32 {
        self.entries.iter().map(|r| r.order).sum()
    }

    pub fn order_of(&self, x: &TropicalNumber) -> u32 {
        self.entries.iter().find(|r| &r.root == x).map_or(0, |r| r.order)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Corners of the graph of `p`, each with its slope jump, plus the root at
/// `-∞` of order equal to the lowest finite exponent.
pub fn roots_uni(p: &UniPoly) -> RootList {
    let hull = concave_majorant(p);
    let mut entries = Vec::new();
    let m = p.min_exponent();
    if m > 0 {
        entries.push(Root { root: TropicalNumber::Bottom, order: m });
    }
    for w in hull.windows(2) {
        let (i0, a0) = &w[0];
        let (i1, a1) = &w[1];
        // a0 + i0 x = a1 + i1 x
        let x = (a0 - a1) / int(i64::from(i1 - i0));
        entries.push(Root { root: TropicalNumber::Finite(x), order: i1 - i0 });
    }
    RootList::new(entries)
}

/// `P = "a_d · Π (x + r)^k"` as functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: TropicalNumber,
    pub roots: RootList,
}

pub fn factor_uni(p: &UniPoly) -> Factorization {
    Factorization { leading: p.coeff(p.degree()), roots: roots_uni(p) }
}

/// Expands `"leading · Π (x + r)^k"`; a root at `-∞` contributes `"x^k"`.
pub fn expand_linear_factors(leading: &TropicalNumber, roots: &RootList) -> Result<UniPoly, PolyError> {
    let lead = leading.finite().ok_or(PolyError::BottomLeading)?;
    let mut acc = UniPoly::from_map(BTreeMap::from([(0, lead.clone())]));
    for r in &roots.entries {
        if r.order == 0 {
            return Err(PolyError::ZeroOrder);
        }
        let factor = match &r.root {
            TropicalNumber::Bottom => UniPoly::from_map(BTreeMap::from([(1, Rational::zero())])),
            TropicalNumber::Finite(x0) => UniPoly::from_map(BTreeMap::from([(0, x0.clone()), (1, Rational::zero())])),
        };
        for _ in 0..r.order {
            acc = acc.mul(&factor);
        }
    }
    Ok(acc)
}

/// Returns `Q` with `P = "(x + x0)^k Q"` as functions, if `x0` has order at least `k`.
pub fn divide_by_root_power(p: &UniPoly, x0: &TropicalNumber, k: u32) -> Option<UniPoly> {
    let Factorization { leading, roots } = factor_uni(p);
    if roots.order_of(x0) < k {
        return None;
    }
    let rest: Vec<Root> = roots
        .entries
        .into_iter()
        .filter_map(|r| {
            if &r.root == x0 {
                (r.order > k).then(|| Root { root: r.root, order: r.order - k })
            } else {
                Some(r)
            }
        })
        .collect();
    expand_linear_factors(&leading, &RootList::new(rest)).ok()
}
