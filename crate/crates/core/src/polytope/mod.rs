//! Exact rational convex polytopes.
//!
//! A [`Polytope`] is built from halfspaces and carries both representations:
//! a canonical irredundant H-representation and the sorted list of vertices.
//! Empty and lower-dimensional polytopes are ordinary values.

mod faces;
mod measure;

pub(crate) use measure::factorial;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::hyperplane::Hyperplane;
use crate::lp::{self, LpOutcome};
use crate::rational::{affine_dimension, QMat, QVec, Rat, Rref};
use crate::{Error, Result};

/// Which closed side of the canonical boundary hyperplane is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// `<normal, x> >= offset`
    Ge,
    /// `<normal, x> <= offset`
    Le,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Ge => Side::Le,
            Side::Le => Side::Ge,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    boundary: Hyperplane,
    side: Side,
}

impl Halfspace {
    /// The region `<normal, x> >= offset`.
    pub fn ge(normal: QVec, offset: Rat) -> Result<Self> {
        let (boundary, flipped) = Hyperplane::canonicalize(normal, offset)?;
        let side = if flipped { Side::Le } else { Side::Ge };
        Ok(Halfspace { boundary, side })
    }

    /// The region `<normal, x> <= offset`.
    pub fn le(normal: QVec, offset: Rat) -> Result<Self> {
        Self::ge(normal, offset).map(Halfspace::complement)
    }

    pub fn from_boundary(boundary: Hyperplane, side: Side) -> Self {
        Halfspace { boundary, side }
    }

    pub fn boundary(&self) -> &Hyperplane {
        &self.boundary
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The closed halfspace on the other side of the same boundary.
    pub fn complement(self) -> Self {
        Halfspace {
            boundary: self.boundary,
            side: self.side.flip(),
        }
    }

    /// `(a, c)` with the halfspace equal to `<a, x> >= c`.
    pub fn oriented(&self) -> (QVec, Rat) {
        match self.side {
            Side::Ge => (self.boundary.normal().clone(), self.boundary.offset().clone()),
            Side::Le => (self.boundary.normal().neg(), -self.boundary.offset().clone()),
        }
    }

    /// `<a, x> - c` for the oriented form; nonnegative inside.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        let r = self.boundary.eval(x);
        match self.side {
            Side::Ge => r,
            Side::Le => -r,
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn ambient(&self) -> usize {
        self.boundary.ambient()
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.boundary.to_string();
        let op = match self.side {
            Side::Ge => " >= ",
            Side::Le => " <= ",
        };
        f.write_str(&text.replacen(" = ", op, 1))
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    halfspaces: Vec<Halfspace>,
    vertices: Vec<QVec>,
    dim: isize,
}

impl Polytope {
    /// Intersection of closed halfspaces in `Q^ambient`.
    ///
    /// Fails with [`Error::Unbounded`] when the region is nonempty and
    /// unbounded. An infeasible system yields the empty polytope.
    pub fn from_halfspaces(ambient: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.ambient() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "halfspace `{h}` does not live in dimension {ambient}"
            )));
        }
        let mut hs = halfspaces;
        hs.sort();
        hs.dedup();

        if ambient == 0 {
            return Ok(Polytope {
                ambient,
                halfspaces: Vec::new(),
                vertices: vec![QVec::zeros(0)],
                dim: 0,
            });
        }

        let (rows, rhs): (Vec<QVec>, Vec<Rat>) = hs.iter().map(Halfspace::oriented).unzip();
        for axis in 0..ambient {
            let e = QVec::unit(ambient, axis);
            for outcome in [lp::minimize(&e, &rows, &rhs)?, lp::maximize(&e, &rows, &rhs)?] {
                match outcome {
                    LpOutcome::Infeasible => return Ok(Self::empty_with(ambient, hs)),
                    LpOutcome::Unbounded => return Err(Error::Unbounded),
                    LpOutcome::Optimal { .. } => {}
                }
            }
        }

        let vertices = enumerate_vertices(ambient, &hs);
        if vertices.is_empty() {
            return Err(Error::violation(
                "vertex enumeration",
                "bounded feasible region produced no vertices",
            ));
        }
        let dim = affine_dimension(&vertices);
        let halfspaces = irredundant(ambient, &hs, &vertices, dim);
        Ok(Polytope {
            ambient,
            halfspaces,
            vertices,
            dim,
        })
    }

    fn empty_with(ambient: usize, halfspaces: Vec<Halfspace>) -> Self {
        Polytope {
            ambient,
            halfspaces,
            vertices: Vec::new(),
            dim: -1,
        }
    }

    pub fn empty(ambient: usize) -> Self {
        if ambient == 0 {
            // Q^0 has one point; keep an infeasible marker through the vertex list.
            return Polytope {
                ambient,
                halfspaces: Vec::new(),
                vertices: Vec::new(),
                dim: -1,
            };
        }
        let e = QVec::unit(ambient, 0);
        let hs = vec![
            Halfspace::ge(e.clone(), Rat::one()).expect("nonzero normal"),
            Halfspace::le(e, Rat::zero()).expect("nonzero normal"),
        ];
        Self::empty_with(ambient, hs)
    }

    /// The closed standard simplex `{x >= 0, sum x <= 1}`.
    pub fn simplex(k: usize) -> Self {
        Self::from_halfspaces(k, simplex_halfspaces(k)).expect("the standard simplex is bounded")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Affine dimension; `-1` for the empty polytope.
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient as isize
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    /// Boundary hyperplanes of the H-representation, deduplicated.
    pub fn facet_hyperplanes(&self) -> Vec<Hyperplane> {
        if self.is_empty() {
            return Vec::new();
        }
        let set: BTreeSet<Hyperplane> = self.halfspaces.iter().map(|h| h.boundary.clone()).collect();
        set.into_iter().collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.ambient && !self.is_empty() && self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Set equality, decided by mutual vertex containment.
    pub fn equal(&self, other: &Polytope) -> bool {
        self.ambient == other.ambient
            && self.vertices.iter().all(|v| other.contains(v))
            && other.vertices.iter().all(|v| self.contains(v))
    }

    /// True when some vertex lies strictly on each side of `h`.
    pub fn separated_by(&self, h: &Hyperplane) -> bool {
        let mut pos = false;
        let mut neg = false;
        for v in &self.vertices {
            let r = h.eval(v);
            pos |= r.is_positive();
            neg |= r.is_negative();
        }
        pos && neg
    }

    /// Minimum of `<form, x>` with the lexicographically first minimizing vertex.
    pub fn minimize_linear(&self, form: &[Rat]) -> Result<(Rat, QVec)> {
        self.optimize(form, false)
    }

    pub fn maximize_linear(&self, form: &[Rat]) -> Result<(Rat, QVec)> {
        self.optimize(form, true)
    }

    fn optimize(&self, form: &[Rat], maximize: bool) -> Result<(Rat, QVec)> {
        if form.len() != self.ambient {
            return Err(Error::DimensionMismatch("linear form length differs from ambient".into()));
        }
        if self.is_empty() {
            return Err(Error::Empty);
        }
        if self.ambient == 0 {
            return Ok((Rat::zero(), self.vertices[0].clone()));
        }
        let (rows, rhs): (Vec<QVec>, Vec<Rat>) = self.halfspaces.iter().map(Halfspace::oriented).unzip();
        let outcome = if maximize {
            lp::maximize(form, &rows, &rhs)?
        } else {
            lp::minimize(form, &rows, &rhs)?
        };
        let LpOutcome::Optimal { value, .. } = outcome else {
            return Err(Error::violation("linear optimisation", "bounded polytope gave a non-optimal LP"));
        };
        let witness = self
            .vertices
            .iter()
            .find(|v| QVec::dot(v, form) == value)
            .cloned()
            .ok_or_else(|| Error::violation("linear optimisation", "LP optimum not attained at a vertex"))?;
        Ok((value, witness))
    }

    /// Adds halfspaces and rebuilds.
    pub fn intersect(&self, extra: impl IntoIterator<Item = Halfspace>) -> Result<Polytope> {
        let mut hs = self.halfspaces.clone();
        hs.extend(extra);
        Polytope::from_halfspaces(self.ambient, hs)
    }

    /// Fixes the listed coordinates and returns the slice in the remaining ones.
    pub fn restrict(&self, fixed: &[(usize, Rat)]) -> Result<Polytope> {
        if fixed.iter().any(|(i, _)| *i >= self.ambient) {
            return Err(Error::DimensionMismatch("fixed coordinate out of range".into()));
        }
        let keep: Vec<usize> = (0..self.ambient)
            .filter(|i| !fixed.iter().any(|(j, _)| j == i))
            .collect();
        if self.is_empty() {
            return Ok(Polytope::empty(keep.len()));
        }
        let mut hs = Vec::new();
        for h in &self.halfspaces {
            let (a, c) = h.oriented();
            let shift = fixed.iter().fold(Rat::zero(), |acc, (j, v)| acc + &a[*j] * v);
            let rest: QVec = keep.iter().map(|&i| a[i].clone()).collect();
            let bound = c - shift;
            if rest.is_zero() {
                if bound.is_positive() {
                    return Ok(Polytope::empty(keep.len()));
                }
                continue;
            }
            hs.push(Halfspace::ge(rest, bound)?);
        }
        Polytope::from_halfspaces(keep.len(), hs)
    }

    /// Vertex incidence of each retained halfspace.
    pub(crate) fn incidence(&self) -> Vec<BTreeSet<usize>> {
        self.halfspaces
            .iter()
            .map(|h| {
                self.vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| h.slack(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect()
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other)
    }
}

/// True when `h` has a vertex of `p` strictly on each side.
pub fn separates(h: &Hyperplane, p: &Polytope) -> bool {
    p.separated_by(h)
}

pub(crate) fn simplex_halfspaces(k: usize) -> Vec<Halfspace> {
    let mut hs: Vec<Halfspace> = (0..k)
        .map(|j| Halfspace::ge(QVec::unit(k, j), Rat::zero()).expect("unit normal"))
        .collect();
    if k > 0 {
        let ones: QVec = (0..k).map(|_| Rat::one()).collect();
        hs.push(Halfspace::le(ones, Rat::one()).expect("nonzero normal"));
    }
    hs
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        visit(&idx);
        let Some(pos) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Unique solution of a square system, if any.
fn solve_square(rows: &[QVec], rhs: &[Rat]) -> Option<QVec> {
    let n = rows.len();
    let augmented = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.to_vec();
            v.push(b.clone());
            v
        })
        .collect();
    let rref = Rref::of(augmented, n + 1);
    if rref.pivots.len() != n || rref.pivots.last() == Some(&n) {
        return None;
    }
    Some(rref.rows.iter().take(n).map(|r| r[n].clone()).collect())
}

fn enumerate_vertices(ambient: usize, hs: &[Halfspace]) -> Vec<QVec> {
    let mut found = BTreeSet::new();
    for_each_subset(hs.len(), ambient, |subset| {
        let rows: Vec<QVec> = subset.iter().map(|&i| hs[i].boundary.normal().clone()).collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| hs[i].boundary.offset().clone()).collect();
        if let Some(x) = solve_square(&rows, &rhs) {
            if hs.iter().all(|h| h.contains(&x)) {
                found.insert(x);
            }
        }
    });
    found.into_iter().collect()
}

/// Implicit equalities (as halfspace pairs) plus one halfspace per facet.
fn irredundant(ambient: usize, hs: &[Halfspace], vertices: &[QVec], dim: isize) -> Vec<Halfspace> {
    let mut out = Vec::new();
    let mut equation_rows: Vec<QVec> = Vec::new();
    let target_equations = ambient as isize - dim;
    let mut facet_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for h in hs {
        let tight: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| h.slack(v).is_zero())
            .map(|(i, _)| i)
            .collect();
        if tight.len() == vertices.len() {
            if (equation_rows.len() as isize) < target_equations {
                let mut row = h.boundary.normal().clone();
                row.push(h.boundary.offset().clone());
                equation_rows.push(row);
                let rank = QMat::from_rows(equation_rows.clone()).expect("rectangular").rank();
                if rank == equation_rows.len() {
                    out.push(Halfspace::from_boundary(h.boundary.clone(), Side::Ge));
                    out.push(Halfspace::from_boundary(h.boundary.clone(), Side::Le));
                } else {
                    equation_rows.pop();
                }
            }
            continue;
        }
        if tight.is_empty() {
            continue;
        }
        let pts: Vec<QVec> = tight.iter().map(|&i| vertices[i].clone()).collect();
        if affine_dimension(&pts) == dim - 1 && facet_sets.insert(tight) {
            out.push(h.clone());
        }
    }
    debug_assert_eq!(equation_rows.len() as isize, target_equations);
    out.sort();
    out
}
