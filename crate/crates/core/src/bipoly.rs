//! Bivariate tropical polynomials `P(x,y) = max (a_{i,j} + i·x + j·y)`.

use std::collections::BTreeMap;

use crate::error::PolyError;
use crate::geometry::{LatticePoint, Point};
use crate::number::{int, Rational, TropicalNumber};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: BTreeMap<LatticePoint, Rational>,
}

impl BiPoly {
    /// Builds a polynomial from `((i, j), coefficient)` pairs, pruning `-∞`.
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), TropicalNumber)>) -> Result<Self, PolyError> {
        let mut coeffs = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for ((i, j), a) in terms {
            if !seen.insert((i, j)) {
                return Err(PolyError::DuplicateExponent(vec![i, j]));
            }
            if let TropicalNumber::Finite(q) = a {
                coeffs.insert(LatticePoint::new(i64::from(i), i64::from(j)), q);
            }
        }
        if coeffs.is_empty() {
            return Err(PolyError::AllBottom);
        }
        Ok(BiPoly { coeffs })
    }

    /// Convenience constructor from rational coefficients.
    pub fn from_terms(terms: &[((u32, u32), Rational)]) -> Self {
        Self::new(terms.iter().map(|(e, a)| (*e, TropicalNumber::Finite(a.clone())))).expect("valid polynomial")
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(terms: &[((u32, u32), i64)]) -> Self {
        Self::new(terms.iter().map(|&(e, a)| (e, TropicalNumber::from_int(a)))).expect("valid polynomial")
    }

    pub(crate) fn from_map(coeffs: BTreeMap<LatticePoint, Rational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        BiPoly { coeffs }
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, &Rational)> {
        self.coeffs.iter().map(|(&p, a)| (p, a))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> TropicalNumber {
        self.coeffs
            .get(&LatticePoint::new(i64::from(i), i64::from(j)))
            .cloned()
            .map_or(TropicalNumber::Bottom, TropicalNumber::Finite)
    }

    /// Maximum of `i + j` over the support.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|p| (p.i + p.j) as u32).max().unwrap_or(0)
    }

    /// Maximum exponent of `y` over the support.
    pub fn degree_in_y(&self) -> u32 {
        self.coeffs.keys().map(|p| p.j as u32).max().unwrap_or(0)
    }

    /// Whether the Newton polygon is the full triangle `Δ_d`, i.e. the
    /// coefficients of `1`, `x^d` and `y^d` are finite.
    pub fn has_standard_support(&self) -> bool {
        let d = i64::from(self.degree());
        d > 0
            && [LatticePoint::new(0, 0), LatticePoint::new(d, 0), LatticePoint::new(0, d)]
                .iter()
                .all(|p| self.coeffs.contains_key(p))
    }

    /// Tropical product: max-plus convolution of the coefficients.
    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out: BTreeMap<LatticePoint, Rational> = BTreeMap::new();
        for (p, a) in self.terms() {
            for (q, b) in other.terms() {
                let key = LatticePoint::new(p.i + q.i, p.j + q.j);
                let v = a + b;
                match out.get_mut(&key) {
                    Some(cur) if *cur >= v => {}
                    Some(cur) => *cur = v,
                    None => {
                        out.insert(key, v);
                    }
                }
            }
        }
        BiPoly::from_map(out)
    }

    /// The polynomial whose curve is this one translated by `(tx, ty)`.
    pub fn translated(&self, tx: &Rational, ty: &Rational) -> BiPoly {
        BiPoly::from_map(
            self.coeffs
                .iter()
                .map(|(p, a)| (*p, a - int(p.i) * tx - int(p.j) * ty))
                .collect(),
        )
    }

    /// Value `max (a + i·x + j·y)` at a finite point.
    pub fn eval(&self, at: &Point) -> Rational {
        self.monomial_values(at).map(|(_, v)| v).max().expect("nonempty")
    }

    pub fn monomial_values<'a>(&'a self, at: &'a Point) -> impl Iterator<Item = (LatticePoint, Rational)> + 'a {
        self.coeffs.iter().map(move |(p, a)| (*p, a + int(p.i) * &at.x + int(p.j) * &at.y))
    }

    /// Exponents whose monomials attain the maximum at `at`.
    pub fn maximizing_terms(&self, at: &Point) -> Vec<LatticePoint> {
        let vals: Vec<_> = self.monomial_values(at).collect();
        let best = vals.iter().map(|(_, v)| v).max().expect("nonempty").clone();
        vals.into_iter().filter(|(_, v)| *v == best).map(|(p, _)| p).collect()
    }

    /// Whether `at` lies on the tropical curve of this polynomial.
    pub fn is_on_curve(&self, at: &Point) -> bool {
        self.maximizing_terms(at).len() >= 2
    }
}
