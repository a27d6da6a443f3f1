//! Triangulation, volume, centroid and integrals of affine functions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Polytope;
use crate::rational::{affine_dimension, QMat, QVec, Rat};
use crate::{Error, Result};

impl Polytope {
    /// Pulling triangulation: cone from `root` over a triangulation of every
    /// facet not containing it. Returns vertex-index simplices.
    pub fn triangulate_from(&self, root: usize) -> Result<Vec<Vec<usize>>> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate("triangulation needs a full-dimensional polytope".into()));
        }
        if root >= self.vertices.len() {
            return Err(Error::InvalidInput(format!("root vertex {root} out of range")));
        }
        let incidence = self.incidence();
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        Ok(self.triangulate_face(&all, self.dim, root, &incidence))
    }

    fn triangulate_face(
        &self,
        face: &BTreeSet<usize>,
        dim: isize,
        root: usize,
        incidence: &[BTreeSet<usize>],
    ) -> Vec<Vec<usize>> {
        if dim == 0 {
            return vec![vec![root]];
        }
        let mut out = Vec::new();
        for facet in self.facets_of(face, dim, incidence) {
            if facet.contains(&root) {
                continue;
            }
            let sub_root = *facet.iter().next().expect("facets are nonempty");
            for mut simplex in self.triangulate_face(&facet, dim - 1, sub_root, incidence) {
                simplex.push(root);
                out.push(simplex);
            }
        }
        out
    }

    /// Facets of a face given by its vertex set, as vertex sets.
    pub(crate) fn facets_of(
        &self,
        face: &BTreeSet<usize>,
        dim: isize,
        incidence: &[BTreeSet<usize>],
    ) -> Vec<BTreeSet<usize>> {
        let mut found = BTreeSet::new();
        for inc in incidence {
            let tight: BTreeSet<usize> = face.intersection(inc).copied().collect();
            if tight.is_empty() || tight.len() == face.len() {
                continue;
            }
            if found.contains(&tight) {
                continue;
            }
            let pts: Vec<QVec> = tight.iter().map(|&i| self.vertices[i].clone()).collect();
            if affine_dimension(&pts) == dim - 1 {
                found.insert(tight);
            }
        }
        found.into_iter().collect()
    }

    fn simplex_volume(&self, simplex: &[usize]) -> Rat {
        let base = &self.vertices[simplex[0]];
        let rows: Vec<QVec> = simplex[1..].iter().map(|&i| self.vertices[i].sub(base)).collect();
        let det = QMat::with_cols(rows, self.ambient)
            .and_then(|m| m.det())
            .expect("square simplex matrix");
        det.abs() / Rat::from_integer(factorial(self.ambient))
    }

    /// Euclidean volume; zero unless full-dimensional.
    pub fn volume(&self) -> Rat {
        self.volume_from(0).unwrap_or_else(|_| Rat::zero())
    }

    /// Volume computed from the pulling triangulation rooted at `root`.
    pub fn volume_from(&self, root: usize) -> Result<Rat> {
        let simplices = self.triangulate_from(root)?;
        Ok(simplices
            .iter()
            .fold(Rat::zero(), |acc, s| acc + self.simplex_volume(s)))
    }

    /// Exact centroid of a full-dimensional polytope.
    pub fn barycenter(&self) -> Result<QVec> {
        let simplices = self.triangulate_from(0)?;
        let mut total = Rat::zero();
        let mut moment = QVec::zeros(self.ambient);
        for s in &simplices {
            let vol = self.simplex_volume(s);
            let pts: Vec<QVec> = s.iter().map(|&i| self.vertices[i].clone()).collect();
            moment = moment.add(&QVec::centroid(&pts).scale(&vol));
            total += vol;
        }
        Ok(moment.scale(&total.recip()))
    }

    /// `integral over P of (<form, y> + constant) dy`.
    ///
    /// On a simplex an affine function integrates to volume times the mean
    /// of its vertex values; the result is summed over a triangulation.
    pub fn integrate_linear(&self, form: &[Rat], constant: &Rat) -> Result<Rat> {
        if form.len() != self.ambient {
            return Err(Error::DimensionMismatch("linear form length differs from ambient".into()));
        }
        if !self.is_full_dimensional() {
            return Ok(Rat::zero());
        }
        let simplices = self.triangulate_from(0)?;
        let mut total = Rat::zero();
        for s in &simplices {
            let vol = self.simplex_volume(s);
            let sum = s
                .iter()
                .fold(Rat::zero(), |acc, &i| acc + self.vertices[i].dot(form) + constant);
            total += vol * sum / Rat::from_integer(BigInt::from(s.len()));
        }
        Ok(total)
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::super::Halfspace;
    use super::*;
    use crate::rational::{int, rat};

    fn ge(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace::ge(QVec::from_ints(normal), int(offset)).unwrap()
    }

    fn square() -> Polytope {
        Polytope::from_halfspaces(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0), ge(&[-1, 0], -1), ge(&[0, -1], -1)])
            .unwrap()
    }

    fn p2() -> Polytope {
        Polytope::from_halfspaces(2, vec![ge(&[-1, -1], -1), ge(&[1, 0], -1), ge(&[0, 1], -1)]).unwrap()
    }

    fn f1() -> Polytope {
        Polytope::from_halfspaces(
            2,
            vec![ge(&[1, 0], -1), ge(&[0, 1], -1), ge(&[-1, 1], -1), ge(&[0, -1], -1)],
        )
        .unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(square().volume(), int(1));
        assert_eq!(p2().volume(), rat(9, 2));
        assert_eq!(f1().volume(), int(4));
        assert_eq!(Polytope::simplex(3).volume(), rat(1, 6));
        let seg = Polytope::from_halfspaces(1, vec![ge(&[1], -1), ge(&[-1], -1)]).unwrap();
        assert_eq!(seg.volume(), int(2));
    }

    #[test]
    fn volume_independent_of_root() {
        for p in [square(), p2(), f1(), Polytope::simplex(3)] {
            let v0 = p.volume();
            for root in 0..p.vertices().len() {
                assert_eq!(p.volume_from(root).unwrap(), v0);
            }
        }
    }

    #[test]
    fn barycenters() {
        assert_eq!(square().barycenter().unwrap(), QVec::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(p2().barycenter().unwrap(), QVec::from_ints(&[0, 0]));
        assert_eq!(f1().barycenter().unwrap(), QVec::new(vec![rat(1, 12), rat(1, 6)]));
        let mut hs = super::super::simplex_halfspaces(2);
        hs.push(ge(&[1, -1], 0));
        hs.push(ge(&[-1, 1], 0));
        let seg = Polytope::from_halfspaces(2, hs).unwrap();
        assert!(matches!(seg.barycenter(), Err(Error::Degenerate(_))));
        assert_eq!(seg.volume(), int(0));
    }

    #[test]
    fn integrals() {
        let seg = Polytope::from_halfspaces(1, vec![ge(&[1], -1), ge(&[-1], -1)]).unwrap();
        assert_eq!(seg.integrate_linear(&[int(1)], &int(1)).unwrap(), int(2));
        assert_eq!(square().integrate_linear(&[int(1), int(0)], &int(0)).unwrap(), rat(1, 2));
        assert_eq!(p2().integrate_linear(&[int(1), int(1)], &int(2)).unwrap(), int(9));
    }
}
