//! The balancing condition `Σ w_i v_i = 0` at every vertex.

use num_traits::{Signed, Zero};

use crate::curve::TropicalCurve;
use crate::error::BalanceError;
use crate::geometry::{cross, Direction};
use crate::number::int;

/// A vertex where the weighted outgoing directions do not sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    /// The weighted sum `Σ w_i v_i`.
    pub residual: (i64, i64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalanceReport {
    pub violations: Vec<Violation>,
}

impl BalanceReport {
    pub fn is_balanced(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_direction(item: &str, d: Direction, weight: u64) -> Result<(), BalanceError> {
    if !d.is_primitive() {
        return Err(BalanceError::NonPrimitive { item: item.to_string(), dx: d.dx, dy: d.dy });
    }
    if weight == 0 {
        return Err(BalanceError::ZeroWeight { item: item.to_string() });
    }
    Ok(())
}

/// Checks the structural sanity of `c` (primitive directions, positive
/// weights, existing endpoints, directions consistent with positions) and then
/// the balancing identity at every vertex.
pub fn check_balancing(c: &TropicalCurve) -> Result<BalanceReport, BalanceError> {
    let n = c.vertices.len();
    let vertex = |item: &str, v: usize| {
        if v < n {
            Ok(())
        } else {
            Err(BalanceError::MissingVertex { item: item.to_string(), vertex: v })
        }
    };
    for (k, e) in c.edges.iter().enumerate() {
        let item = format!("edge {k}");
        check_direction(&item, e.direction, e.weight)?;
        vertex(&item, e.from)?;
        vertex(&item, e.to)?;
        let (a, b) = (&c.vertices[e.from].position, &c.vertices[e.to].position);
        let (vx, vy) = (&b.x - &a.x, &b.y - &a.y);
        let (ux, uy) = (int(e.direction.dx), int(e.direction.dy));
        let along = &vx * &ux + &vy * &uy;
        if !cross(&vx, &vy, &ux, &uy).is_zero() || !along.is_positive() {
            return Err(BalanceError::DirectionMismatch { item });
        }
    }
    for (k, r) in c.rays.iter().enumerate() {
        let item = format!("ray {k}");
        check_direction(&item, r.direction, r.weight)?;
        vertex(&item, r.base)?;
    }
    for (k, l) in c.lines.iter().enumerate() {
        check_direction(&format!("line {k}"), l.direction, l.weight)?;
    }

    let mut sums = vec![(0i64, 0i64); n];
    for e in &c.edges {
        let w = e.weight as i64;
        sums[e.from].0 += w * e.direction.dx;
        sums[e.from].1 += w * e.direction.dy;
        sums[e.to].0 -= w * e.direction.dx;
        sums[e.to].1 -= w * e.direction.dy;
    }
    for r in &c.rays {
        let w = r.weight as i64;
        sums[r.base].0 += w * r.direction.dx;
        sums[r.base].1 += w * r.direction.dy;
    }
    let violations = sums
        .into_iter()
        .enumerate()
        .filter(|(_, s)| *s != (0, 0))
        .map(|(vertex, residual)| Violation { vertex, residual })
        .collect();
    Ok(BalanceReport { violations })
}
