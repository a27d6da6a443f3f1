//! Face enumeration through vertex incidences.

use std::collections::BTreeSet;

use super::{Halfspace, Polytope};
use crate::{Error, Result};

impl Polytope {
    /// Vertex-index sets of all nonempty faces, indexed by dimension.
    pub fn face_lattice(&self) -> Vec<Vec<BTreeSet<usize>>> {
        if self.is_empty() {
            return Vec::new();
        }
        let top = self.dim as usize;
        let incidence = self.incidence();
        let mut levels: Vec<Vec<BTreeSet<usize>>> = vec![Vec::new(); top + 1];
        levels[top] = vec![(0..self.vertices.len()).collect()];
        for d in (1..=top).rev() {
            let mut next = BTreeSet::new();
            for face in &levels[d] {
                next.extend(self.facets_of(face, d as isize, &incidence));
            }
            levels[d - 1] = next.into_iter().collect();
        }
        levels
    }

    /// All faces of dimension `dim`, each with its own H-representation.
    pub fn faces(&self, dim: usize) -> Result<Vec<Polytope>> {
        let lattice = self.face_lattice();
        let Some(level) = lattice.get(dim) else {
            return Ok(Vec::new());
        };
        level.iter().map(|set| self.face_from_vertices(set)).collect()
    }

    /// The face spanned by the given vertex indices: every halfspace tight
    /// on all of them is turned into an equality.
    pub fn face_from_vertices(&self, set: &BTreeSet<usize>) -> Result<Polytope> {
        if set.iter().any(|&i| i >= self.vertices.len()) {
            return Err(Error::InvalidInput("vertex index out of range".into()));
        }
        let mut hs: Vec<Halfspace> = self.halfspaces.clone();
        for h in &self.halfspaces {
            if set.iter().all(|&i| num_traits::Zero::is_zero(&h.slack(&self.vertices[i]))) {
                hs.push(h.clone().complement());
            }
        }
        Polytope::from_halfspaces(self.ambient, hs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, QVec};

    #[test]
    fn triangle_faces() {
        let tri = Polytope::simplex(2);
        let edges = tri.faces(1).unwrap();
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|e| e.dim() == 1 && e.vertices().len() == 2));
        assert_eq!(tri.faces(0).unwrap().len(), 3);
        assert_eq!(tri.faces(2).unwrap().len(), 1);
        assert!(tri.faces(3).unwrap().is_empty());
        let hyp = edges
            .iter()
            .find(|e| e.contains(&[rat(1, 2), rat(1, 2)]))
            .expect("hypotenuse");
        assert!(!hyp.contains(&[rat(1, 4), rat(1, 4)]));
    }

    #[test]
    fn cube_face_counts() {
        let mut hs = Vec::new();
        for j in 0..3 {
            hs.push(Halfspace::ge(QVec::unit(3, j), rat(0, 1)).unwrap());
            hs.push(Halfspace::le(QVec::unit(3, j), rat(1, 1)).unwrap());
        }
        let cube = Polytope::from_halfspaces(3, hs).unwrap();
        let counts: Vec<usize> = cube.face_lattice().iter().map(Vec::len).collect();
        assert_eq!(counts, vec![8, 12, 6, 1]);
    }
}
