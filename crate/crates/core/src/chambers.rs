//! Chamber decomposition of the coefficient simplex induced by a finite family
//! of models, with the wall-adjacency graph and segment crossings.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use crate::domains::{Model, Status};
use crate::hyperplane::Hyperplane;
use crate::lp;
use crate::polytope::{simplex_halfspaces, Halfspace, Polytope, Side};
use crate::rational::{sign, QVec, Rat};
use crate::sampling;
use crate::{Error, Result};

/// Canonical, deduplicated walls in `Q^k`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSet {
    k: usize,
    walls: Vec<Hyperplane>,
}

impl WallSet {
    /// Facet hyperplanes of every domain and LC polytope in the family, plus
    /// the simplex facets. All models must share `k`.
    pub fn collect(k: usize, family: &[Model]) -> Result<Self> {
        let mut set: BTreeSet<Hyperplane> = simplex_halfspaces(k).into_iter().map(|h| h.boundary().clone()).collect();
        for model in family {
            if model.k() != k {
                return Err(Error::InvalidInput(format!(
                    "model `{}` has k = {}, family uses k = {k}",
                    model.name(),
                    model.k()
                )));
            }
            set.extend(model.kss_domain()?.domain.facet_hyperplanes());
            set.extend(model.lc_polytope()?.facet_hyperplanes());
        }
        Ok(WallSet {
            k,
            walls: set.into_iter().collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn walls(&self) -> &[Hyperplane] {
        &self.walls
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }
}

/// Common `k` of a nonempty family.
pub fn family_k(family: &[Model]) -> Result<usize> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidInput("empty family".into()))?
        .k();
    match family.iter().find(|m| m.k() != first) {
        Some(m) => Err(Error::InvalidInput(format!(
            "mixed k in family: `{}` has k = {}, `{}` has k = {first}",
            m.name(),
            m.k(),
            family[0].name()
        ))),
        None => Ok(first),
    }
}

#[derive(Clone, Debug)]
pub struct Chamber {
    /// One `+` or `-` per wall, in wall order.
    pub sign_vector: String,
    pub closure: Polytope,
    pub sample: QVec,
    pub statuses: BTreeMap<String, Status>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub wall: usize,
    pub changed_models: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ChamberComplex {
    pub walls: WallSet,
    pub chambers: Vec<Chamber>,
    pub edges: Vec<Edge>,
}

fn signed_row(wall: &Hyperplane, positive: bool) -> (QVec, Rat) {
    let h = Halfspace::from_boundary(wall.clone(), if positive { Side::Ge } else { Side::Le });
    h.oriented()
}

fn signed_halfspaces(walls: &[Hyperplane], signs: &[bool]) -> Vec<Halfspace> {
    walls
        .iter()
        .zip(signs)
        .map(|(w, &s)| Halfspace::from_boundary(w.clone(), if s { Side::Ge } else { Side::Le }))
        .collect()
}

/// Sign vectors of all full-dimensional cells of the arrangement inside the simplex.
fn enumerate_cells(k: usize, walls: &[Hyperplane]) -> Result<Vec<Vec<bool>>> {
    let (base_rows, base_rhs): (Vec<QVec>, Vec<Rat>) = simplex_halfspaces(k).iter().map(Halfspace::oriented).unzip();
    let mut cells = Vec::new();
    let mut stack: Vec<Vec<bool>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == walls.len() {
            cells.push(prefix);
            continue;
        }
        let next = &walls[prefix.len()];
        for positive in [false, true] {
            let mut rows = base_rows.clone();
            let mut rhs = base_rhs.clone();
            for (w, &s) in walls.iter().zip(&prefix).chain(std::iter::once((next, &positive))) {
                let (r, b) = signed_row(w, s);
                rows.push(r);
                rhs.push(b);
            }
            if lp::interior_margin(&rows, &rhs)?.is_positive() {
                let mut extended = prefix.clone();
                extended.push(positive);
                stack.push(extended);
            }
        }
    }
    Ok(cells)
}

fn statuses_at(family: &[Model], x: &[Rat]) -> Result<BTreeMap<String, Status>> {
    family
        .iter()
        .map(|m| Ok((m.name().to_string(), m.delta_at(x)?.status)))
        .collect()
}

/// Full-dimensional chambers of the wall arrangement restricted to the closed
/// simplex, sorted by sign vector, with their adjacency graph.
pub fn chamber_complex(family: &[Model]) -> Result<ChamberComplex> {
    let k = family_k(family)?;
    if k == 0 {
        return Err(Error::InvalidInput("chambers need at least one boundary divisor".into()));
    }
    let names: BTreeSet<&str> = family.iter().map(Model::name).collect();
    if names.len() != family.len() {
        return Err(Error::InvalidInput("model names in a family must be distinct".into()));
    }
    let walls = WallSet::collect(k, family)?;
    let mut chambers = Vec::new();
    for signs in enumerate_cells(k, walls.walls())? {
        let mut hs = simplex_halfspaces(k);
        hs.extend(signed_halfspaces(walls.walls(), &signs));
        let closure = Polytope::from_halfspaces(k, hs)?;
        let sample = QVec::centroid(closure.vertices());
        let statuses = statuses_at(family, &sample)?;
        chambers.push(Chamber {
            sign_vector: signs.iter().map(|&s| if s { '+' } else { '-' }).collect(),
            closure,
            sample,
            statuses,
        });
    }
    chambers.sort_by(|a, b| a.sign_vector.cmp(&b.sign_vector));

    let mut edges = Vec::new();
    for a in 0..chambers.len() {
        for b in a + 1..chambers.len() {
            let diff: Vec<usize> = chambers[a]
                .sign_vector
                .bytes()
                .zip(chambers[b].sign_vector.bytes())
                .enumerate()
                .filter(|(_, (x, y))| x != y)
                .map(|(i, _)| i)
                .collect();
            if diff.len() != 1 {
                continue;
            }
            let shared = chambers[a]
                .closure
                .intersect(chambers[b].closure.halfspaces().iter().cloned())?;
            if shared.dim() != k as isize - 1 {
                continue;
            }
            let changed_models = chambers[a]
                .statuses
                .iter()
                .filter(|(name, s)| chambers[b].statuses.get(*name) != Some(s))
                .map(|(name, _)| name.clone())
                .collect();
            edges.push(Edge {
                a,
                b,
                wall: diff[0],
                changed_models,
            });
        }
    }
    Ok(ChamberComplex { walls, chambers, edges })
}

impl ChamberComplex {
    pub fn k(&self) -> usize {
        self.walls.k()
    }

    /// Sum of chamber volumes; equals `1/k!` for a partition of the simplex.
    pub fn total_volume(&self) -> Rat {
        self.chambers.iter().map(|c| c.closure.volume()).sum()
    }

    /// Index of the chamber whose closure contains `x`, first in sorted order.
    pub fn locate(&self, x: &[Rat]) -> Option<usize> {
        self.chambers.iter().position(|c| c.closure.contains(x))
    }

    /// Walls on which `x` lies.
    pub fn walls_through(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.walls.len()).filter(|&i| self.walls.walls[i].contains(x)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstancyReport {
    pub faces: usize,
    pub points: usize,
}

/// Samples every face of every chamber (the chamber itself included) in its
/// relative interior and requires all statuses to agree on each face.
pub fn face_constancy_check(
    complex: &ChamberComplex,
    family: &[Model],
    samples_per_face: usize,
    seed: u64,
) -> Result<ConstancyReport> {
    let mut rng = sampling::rng(seed);
    let mut seen: BTreeSet<Vec<QVec>> = BTreeSet::new();
    let mut report = ConstancyReport::default();
    for chamber in &complex.chambers {
        let vertices = chamber.closure.vertices();
        for layer in chamber.closure.face_lattice() {
            for face in layer {
                let points: Vec<QVec> = face.iter().map(|&i| vertices[i].clone()).collect();
                if !seen.insert(points.clone()) {
                    continue;
                }
                let reference = QVec::centroid(&points);
                let expected = statuses_at(family, &reference)?;
                for _ in 0..samples_per_face {
                    let x = sampling::interior_combination(&points, &mut rng, 16);
                    let got = statuses_at(family, &x)?;
                    if got != expected {
                        let model = expected
                            .iter()
                            .find(|(name, s)| got.get(*name) != Some(s))
                            .map(|(name, _)| name.as_str())
                            .unwrap_or_default();
                        return Err(Error::violation(
                            &x,
                            format!("status of `{model}` differs from the face centroid {reference}; a wall is missing"),
                        ));
                    }
                    report.points += 1;
                }
                report.faces += 1;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Parameter along `from + t (to - from)`.
    pub t: Rat,
    pub point: QVec,
    pub walls: Vec<usize>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentPiece {
    pub from_t: Rat,
    pub to_t: Rat,
    pub sample: QVec,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub model: String,
    pub from: QVec,
    pub to: QVec,
    pub crossings: Vec<Crossing>,
    pub pieces: Vec<SegmentPiece>,
}

/// Exact points where the segment `[w1, w2]` crosses walls of the complex and
/// the status of `model` on each open piece and at each crossing.
pub fn crossing_report(complex: &ChamberComplex, model: &Model, w1: &[Rat], w2: &[Rat]) -> Result<CrossingReport> {
    let k = complex.k();
    if model.k() != k || w1.len() != k || w2.len() != k {
        return Err(Error::DimensionMismatch(format!("crossing needs points and a model in dimension {k}")));
    }
    let from = QVec::new(w1.to_vec());
    let to = QVec::new(w2.to_vec());
    for end in [&from, &to] {
        let on = complex.walls_through(end);
        if let Some(&i) = on.first() {
            return Err(Error::Degenerate(format!(
                "{end} lies on the wall {}; move it off the wall",
                complex.walls.walls()[i]
            )));
        }
    }
    let mut by_t: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
    for (i, wall) in complex.walls.walls().iter().enumerate() {
        let f0 = wall.eval(&from);
        let f1 = wall.eval(&to);
        let opposite = matches!((sign(&f0), sign(&f1)), (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less));
        if opposite {
            let t = &f0 / (&f0 - &f1);
            by_t.entry(t).or_default().push(i);
        }
    }
    let mut crossings = Vec::with_capacity(by_t.len());
    for (t, walls) in by_t {
        let point = from.lerp(&to, &t);
        let status = model.delta_at(&point)?.status;
        crossings.push(Crossing { t, point, walls, status });
    }

    let mut cuts = vec![Rat::from_integer(0.into())];
    cuts.extend(crossings.iter().map(|c| c.t.clone()));
    cuts.push(Rat::one());
    let mut pieces = Vec::with_capacity(cuts.len() - 1);
    for pair in cuts.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let mid = (a + b) / Rat::from_integer(2.into());
        let sample = from.lerp(&to, &mid);
        let status = model.delta_at(&sample)?.status;
        for q in [1, 3] {
            let t = a + (b - a) * Rat::new(q.into(), 4.into());
            let x = from.lerp(&to, &t);
            if model.delta_at(&x)?.status != status {
                return Err(Error::violation(&x, "status changes between consecutive crossings"));
            }
        }
        pieces.push(SegmentPiece {
            from_t: a.clone(),
            to_t: b.clone(),
            sample,
            status,
        });
    }
    Ok(CrossingReport {
        model: model.name().to_string(),
        from,
        to,
        crossings,
        pieces,
    })
}
