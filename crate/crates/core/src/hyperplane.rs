//! Rational hyperplanes and the constructive rationality procedures:
//! hyperplanes through rational points, affine hulls as intersections of
//! rational hyperplanes, and vertices cut out by rational facets.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::{affine_dimension, lcm_of_denominators, solve_linear, QMat, QVec, Rat};
use crate::{Error, Result};

/// The hyperplane `{x : <normal, x> = offset}` in canonical form.
///
/// Normal and offset are scaled to coprime integers and the first nonzero
/// entry of the normal is positive, so structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    normal: QVec,
    offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: QVec, offset: Rat) -> Result<Self> {
        Self::canonicalize(normal, offset).map(|(h, _)| h)
    }

    /// Canonical form plus whether the defining equation was negated.
    pub fn canonicalize(normal: QVec, offset: Rat) -> Result<(Self, bool)> {
        if normal.is_zero() {
            return Err(Error::Degenerate("hyperplane normal is zero".into()));
        }
        let scale = lcm_of_denominators(normal.iter().chain(std::iter::once(&offset)));
        let ints: Vec<BigInt> = normal
            .iter()
            .chain(std::iter::once(&offset))
            .map(|v| (v * Rat::from_integer(scale.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let leading_negative = ints
            .iter()
            .take(normal.len())
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_negative());
        let divisor = if leading_negative { -g } else { g };
        let mut scaled: Vec<Rat> = ints
            .into_iter()
            .map(|v| Rat::from_integer(v / &divisor))
            .collect();
        let offset = scaled.pop().expect("offset entry");
        Ok((
            Hyperplane {
                normal: QVec::new(scaled),
                offset,
            },
            leading_negative,
        ))
    }

    pub fn normal(&self) -> &QVec {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn ambient(&self) -> usize {
        self.normal.len()
    }

    /// Signed residual `<normal, x> - offset`.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.normal.dot(x) - &self.offset
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.eval(x).is_zero()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = format!("x{}", i + 1);
            let mag = c.abs();
            let coeff = if mag == Rat::from_integer(1.into()) {
                String::new()
            } else {
                mag.to_string()
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{coeff}{var}")?,
                (true, false) => write!(f, "{coeff}{var}")?,
                (false, true) => write!(f, " - {coeff}{var}")?,
                (false, false) => write!(f, " + {coeff}{var}")?,
            }
            first = false;
        }
        write!(f, " = {}", self.offset)
    }
}

/// The unique hyperplane through `n` affinely independent points of `Q^n`.
pub fn hyperplane_through_points(points: &[QVec]) -> Result<Hyperplane> {
    let n = points.first().map_or(0, |p| p.len());
    if n == 0 || points.len() != n {
        return Err(Error::Degenerate(format!(
            "need exactly n points in ambient dimension n, got {} points in dimension {n}",
            points.len()
        )));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch("points differ in length".into()));
    }
    if affine_dimension(points) != n as isize - 1 {
        return Err(Error::Degenerate("points are affinely dependent".into()));
    }
    let (_, mut equations) = hull_equations(points);
    debug_assert_eq!(equations.len(), 1);
    Ok(equations.remove(0))
}

/// Dimension of the affine hull together with canonical rational hyperplanes
/// whose intersection is exactly that hull.
pub fn affine_hull(points: &[QVec]) -> Result<(usize, Vec<Hyperplane>)> {
    if points.is_empty() {
        return Err(Error::InvalidInput("affine hull of an empty point set".into()));
    }
    let n = points[0].len();
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch("points differ in length".into()));
    }
    Ok(hull_equations(points))
}

/// Rows `(p, -1)`: their nullspace is the space of affine equations
/// `<a, x> = c` satisfied by every point.
fn hull_equations(points: &[QVec]) -> (usize, Vec<Hyperplane>) {
    let n = points[0].len();
    let rows = points
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(-Rat::from_integer(1.into()));
            r
        })
        .collect();
    let m = QMat::with_cols(rows, n + 1).expect("rectangular");
    let mut hyperplanes: Vec<Hyperplane> = m
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut entries = v.into_inner();
            let offset = entries.pop().expect("offset column");
            Hyperplane::new(QVec::new(entries), offset).expect("equation of a nonempty set has a nonzero normal")
        })
        .collect();
    hyperplanes.sort();
    hyperplanes.dedup();
    let dim = affine_dimension(points) as usize;
    (dim, hyperplanes)
}

/// The unique common point of a family of hyperplanes.
pub fn vertex_from_facets(hyperplanes: &[Hyperplane]) -> Result<QVec> {
    let n = hyperplanes
        .first()
        .map(Hyperplane::ambient)
        .ok_or_else(|| Error::Degenerate("no hyperplanes given".into()))?;
    if hyperplanes.iter().any(|h| h.ambient() != n) {
        return Err(Error::DimensionMismatch("hyperplanes differ in ambient dimension".into()));
    }
    let a = QMat::with_cols(hyperplanes.iter().map(|h| h.normal.clone()).collect(), n)?;
    if a.rank() != n {
        return Err(Error::Degenerate("hyperplanes do not meet in a single point".into()));
    }
    let b: Vec<Rat> = hyperplanes.iter().map(|h| h.offset.clone()).collect();
    solve_linear(&a, &b)?.ok_or_else(|| Error::Degenerate("hyperplanes have no common point".into()))
}
