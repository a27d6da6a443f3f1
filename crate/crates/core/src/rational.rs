//! Rational scalars, vectors, matrices and exact Gaussian elimination.

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`. Decimals are rejected.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("`{text}` is not a rational of the form p/q"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::InvalidInput(format!("`{text}` has a zero denominator")));
    }
    Ok(Rat::new(numer, denom))
}

/// Canonical string form: `"p/q"`, or `"p"` for integers.
pub fn fmt_rat(value: &Rat) -> String {
    value.to_string()
}

pub(crate) fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// A rational vector of fixed length.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVec(Vec<Rat>);

impl QVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        QVec(entries)
    }

    pub fn zeros(len: usize) -> Self {
        QVec(vec![Rat::zero(); len])
    }

    pub fn unit(len: usize, axis: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[axis] = Rat::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        QVec(values.iter().map(|&v| int(v)).collect())
    }

    pub fn parse(entries: &[&str]) -> Result<Self> {
        entries.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>().map(QVec)
    }

    pub fn into_inner(self) -> Vec<Rat> {
        self.0
    }

    pub fn dot(&self, other: &[Rat]) -> Rat {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(other)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn sum(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, v| acc + v)
    }

    pub fn add(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rat) -> QVec {
        QVec(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &QVec, t: &Rat) -> QVec {
        let s = Rat::one() - t;
        QVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a * &s + b * t)
                .collect(),
        )
    }

    /// Average of a nonempty list of points.
    pub fn centroid(points: &[QVec]) -> QVec {
        assert!(!points.is_empty(), "centroid of an empty point list");
        let n = points[0].len();
        let total = points.iter().fold(QVec::zeros(n), |acc, p| acc.add(p));
        total.scale(&Rat::new(BigInt::one(), BigInt::from(points.len())))
    }

    pub fn push(&mut self, value: Rat) {
        self.0.push(value);
    }
}

impl Deref for QVec {
    type Target = [Rat];
    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl From<Vec<Rat>> for QVec {
    fn from(v: Vec<Rat>) -> Self {
        QVec(v)
    }
}

impl FromIterator<Rat> for QVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        QVec(iter.into_iter().collect())
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Rectangular rational matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    rows: Vec<QVec>,
    cols: usize,
}

impl QMat {
    pub fn from_rows(rows: Vec<QVec>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("matrix rows differ in length".into()));
        }
        Ok(QMat { rows, cols })
    }

    /// Matrix with a known column count, valid even with zero rows.
    pub fn with_cols(rows: Vec<QVec>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("matrix rows differ in length".into()));
        }
        Ok(QMat { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        QMat {
            rows: (0..n).map(|i| QVec::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &[Rat]) -> QVec {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn rank(&self) -> usize {
        Rref::of(self.rows.iter().map(|r| r.to_vec()).collect(), self.cols).pivots.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<QVec> {
        let rref = Rref::of(self.rows.iter().map(|r| r.to_vec()).collect(), self.cols);
        rref.nullspace()
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Rat> {
        if self.n_rows() != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m: Vec<Vec<Rat>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let n = self.cols;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(Rat::zero());
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &p;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
        Ok(det)
    }
}

impl Index<usize> for QMat {
    type Output = QVec;
    fn index(&self, i: usize) -> &QVec {
        &self.rows[i]
    }
}

/// Reduced row echelon form.
pub(crate) struct Rref {
    pub rows: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn of(mut rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for v in rows[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let factor = rows[i][c].clone();
                for j in c..rows[i].len() {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rows, pivots, cols }
    }

    pub fn nullspace(&self) -> Vec<QVec> {
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !self.pivots.contains(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &p) in self.pivots.iter().enumerate() {
                v[p] = -self.rows[row][free].clone();
            }
            basis.push(QVec(v));
        }
        basis
    }
}

/// Solves `a * x = b` exactly.
///
/// Returns `None` for an inconsistent system. Free variables of an
/// under-determined system are set to zero.
pub fn solve_linear(a: &QMat, b: &[Rat]) -> Result<Option<QVec>> {
    if a.n_rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.n_rows(),
            b.len()
        )));
    }
    let n = a.n_cols();
    let augmented = a
        .rows
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.to_vec();
            r.push(rhs.clone());
            r
        })
        .collect();
    let rref = Rref::of(augmented, n + 1);
    if rref.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &p) in rref.pivots.iter().enumerate() {
        x[p] = rref.rows[row][n].clone();
    }
    Ok(Some(QVec(x)))
}

/// Dimension of the affine hull of a point set; `-1` for no points.
pub fn affine_dimension(points: &[QVec]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<QVec> = points[1..].iter().map(|p| p.sub(first)).collect();
    if diffs.is_empty() {
        return 0;
    }
    QMat::with_cols(diffs, first.len())
        .expect("points share the ambient dimension")
        .rank() as isize
}

pub(crate) fn sign(value: &Rat) -> std::cmp::Ordering {
    if value.is_positive() {
        std::cmp::Ordering::Greater
    } else if value.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["0", "-3", "1/2", "-7/9", "12345678901234567890/7"] {
            assert_eq!(fmt_rat(&q(text)), text);
        }
        assert_eq!(fmt_rat(&q("4/6")), "2/3");
        assert_eq!(fmt_rat(&q("3/-6")), "-1/2");
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn solve_identity() {
        let x = solve_linear(&QMat::identity(2), &[int(3), rat(1, 2)]).unwrap().unwrap();
        assert_eq!(x, QVec::new(vec![int(3), rat(1, 2)]));
    }

    #[test]
    fn solve_symmetric() {
        let a = QMat::from_rows(vec![QVec::from_ints(&[1, 1]), QVec::from_ints(&[1, -1])]).unwrap();
        let x = solve_linear(&a, &[int(1), int(0)]).unwrap().unwrap();
        assert_eq!(x, QVec::new(vec![rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn solve_free_variable_is_zero() {
        let a = QMat::from_rows(vec![QVec::from_ints(&[2, 0]), QVec::from_ints(&[0, 0])]).unwrap();
        let x = solve_linear(&a, &[int(1), int(0)]).unwrap().unwrap();
        assert_eq!(x, QVec::new(vec![rat(1, 2), int(0)]));
    }

    #[test]
    fn solve_inconsistent_and_mismatch() {
        let a = QMat::from_rows(vec![QVec::from_ints(&[1, 1]), QVec::from_ints(&[2, 2])]).unwrap();
        assert!(solve_linear(&a, &[int(1), int(3)]).unwrap().is_none());
        assert!(matches!(
            solve_linear(&a, &[int(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinant_and_rank() {
        let a = QMat::from_rows(vec![
            QVec::from_ints(&[2, 1, 0]),
            QVec::from_ints(&[1, 3, 1]),
            QVec::from_ints(&[0, 1, 4]),
        ])
        .unwrap();
        // 2(12-1) - 1(4-0) = 18
        assert_eq!(a.det().unwrap(), int(18));
        assert_eq!(a.rank(), 3);
        let b = QMat::from_rows(vec![QVec::from_ints(&[1, 2]), QVec::from_ints(&[2, 4])]).unwrap();
        assert_eq!(b.rank(), 1);
        assert_eq!(b.nullspace(), vec![QVec::from_ints(&[-2, 1])]);
    }

    #[test]
    fn affine_dimension_counts() {
        assert_eq!(affine_dimension(&[]), -1);
        assert_eq!(affine_dimension(&[QVec::from_ints(&[1, 1])]), 0);
        let line = [QVec::from_ints(&[0, 0]), QVec::from_ints(&[1, 1]), QVec::from_ints(&[2, 2])];
        assert_eq!(affine_dimension(&line), 1);
    }
}
