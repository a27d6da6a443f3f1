//! Toric Fano models and exact evaluation of toric valuation invariants.
//!
//! A model is given by the primitive rays of a complete simplicial fan. The
//! anticanonical polytope `P = {y : <y, r_i> >= -1}` is derived from the rays
//! and its normal fan supplies the maximal cones. A toric valuation `v_u` is
//! attached to every nonzero `u` in `N ⊗ Q`; on the maximal cone containing
//! `u` with `u = sum lambda_i r_i` the invariants are
//!
//! * `A(u) = sum lambda_i = -<u, v_sigma>` for the vertex `v_sigma` dual to the cone,
//! * `ord_u(D) = sum lambda_i a_i` for `D = sum a_i D_i`,
//! * `S(u) = <u, barycenter(P)> - min_P <u, .>`,
//! * `T(u) = max_P <u, .> - min_P <u, .>`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polytope::{factorial, Halfspace, Polytope};
use crate::rational::{lcm_of_denominators, solve_linear, QMat, QVec, Rat};
use crate::{Error, RejectReason, Result};

#[derive(Clone, Debug)]
pub struct MaximalCone {
    /// Vertex of `P` dual to the cone.
    pub vertex: QVec,
    /// Indices of the rays spanning the cone.
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ToricFanoModel {
    dim: usize,
    rays: Vec<Vec<i64>>,
    polytope: Polytope,
    cones: Vec<MaximalCone>,
    degree: Rat,
    barycenter: QVec,
}

/// Torus-invariant divisor `D = sum a_i D_{r_i}` linearly equivalent to `-K_X`.
#[derive(Clone, Debug)]
pub struct ToricDivisor {
    pub name: String,
    pub coeffs: QVec,
    /// `m` with `a_i - 1 = <m, r_i>` for every ray.
    pub witness: QVec,
    /// Smallest `I > 0` with `I m` and every `I a_i` integral.
    pub index: BigInt,
}

#[derive(Clone, Debug)]
pub struct PairModel {
    base: ToricFanoModel,
    divisors: Vec<ToricDivisor>,
}

impl ToricFanoModel {
    pub fn new(rays: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rays.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidInput("a toric model needs at least one nonempty ray".into()));
        }
        if rays.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("rays differ in length".into()));
        }
        for r in &rays {
            let g = r.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            if g != 1 {
                return Err(Error::rejected(
                    RejectReason::NonPrimitiveRay,
                    format!("ray {r:?} is not primitive"),
                ));
            }
        }
        let mut sorted = rays.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != rays.len() {
            return Err(Error::InvalidInput("duplicate rays".into()));
        }

        let halfspaces = rays
            .iter()
            .map(|r| Halfspace::ge(QVec::from_ints(r), -Rat::one()))
            .collect::<Result<Vec<_>>>()?;
        let polytope = match Polytope::from_halfspaces(dim, halfspaces.clone()) {
            Ok(p) => p,
            Err(Error::Unbounded) => {
                return Err(Error::rejected(
                    RejectReason::NotFano,
                    "rays do not positively span the lattice; anticanonical polytope is unbounded",
                ))
            }
            Err(e) => return Err(e),
        };
        // Origin is interior by construction; every ray must support a facet.
        for (r, h) in rays.iter().zip(&halfspaces) {
            if !polytope.halfspaces().contains(h) {
                return Err(Error::rejected(
                    RejectReason::NotFano,
                    format!("ray {r:?} does not define a facet of the anticanonical polytope"),
                ));
            }
        }

        let mut cones = Vec::new();
        for v in polytope.vertices() {
            let tight: Vec<usize> = rays
                .iter()
                .enumerate()
                .filter(|(_, r)| QVec::from_ints(r).dot(v) == -Rat::one())
                .map(|(i, _)| i)
                .collect();
            if tight.len() != dim {
                return Err(Error::rejected(
                    RejectReason::NonSimplicialCone,
                    format!("cone dual to vertex {v} has {} rays in dimension {dim}", tight.len()),
                ));
            }
            cones.push(MaximalCone {
                vertex: v.clone(),
                rays: tight,
            });
        }
        let degree = Rat::from_integer(factorial(dim)) * polytope.volume();
        let barycenter = polytope.barycenter()?;
        Ok(ToricFanoModel {
            dim,
            rays,
            polytope,
            cones,
            degree,
            barycenter,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> QVec {
        QVec::from_ints(&self.rays[i])
    }

    pub fn ray_label(&self, i: usize) -> String {
        let parts: Vec<String> = self.rays[i].iter().map(i64::to_string).collect();
        format!("ray({})", parts.join(","))
    }

    /// The anticanonical polytope in `M ⊗ Q`.
    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn cones(&self) -> &[MaximalCone] {
        &self.cones
    }

    /// Anticanonical degree `d! vol(P)`.
    pub fn degree(&self) -> &Rat {
        &self.degree
    }

    pub fn barycenter(&self) -> &QVec {
        &self.barycenter
    }

    fn check_u(&self, u: &[Rat]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "valuation vector has length {} in dimension {}",
                u.len(),
                self.dim
            )));
        }
        if u.iter().all(Zero::is_zero) {
            return Err(Error::Domain("the zero vector defines no valuation".into()));
        }
        Ok(())
    }

    /// A maximal cone containing `u` and the coefficients of `u` on its rays.
    pub fn locate(&self, u: &[Rat]) -> Result<(usize, QVec)> {
        self.check_u(u)?;
        for (idx, cone) in self.cones.iter().enumerate() {
            let rows = (0..self.dim)
                .map(|row| cone.rays.iter().map(|&r| Rat::from_integer(self.rays[r][row].into())).collect())
                .collect();
            let a = QMat::with_cols(rows, self.dim)?;
            if let Some(lambda) = solve_linear(&a, u)? {
                if lambda.iter().all(|l| !l.is_negative()) {
                    return Ok((idx, lambda));
                }
            }
        }
        Err(Error::violation(QVec::from(u.to_vec()), "no maximal cone contains the vector"))
    }

    /// Both log discrepancy routes: ray coefficients and the dual vertex.
    pub fn log_discrepancy_routes(&self, u: &[Rat]) -> Result<(Rat, Rat)> {
        let (idx, lambda) = self.locate(u)?;
        let by_rays = lambda.sum();
        let by_vertex = -self.cones[idx].vertex.dot(u);
        Ok((by_rays, by_vertex))
    }

    pub fn log_discrepancy(&self, u: &[Rat]) -> Result<Rat> {
        let (by_rays, by_vertex) = self.log_discrepancy_routes(u)?;
        if by_rays != by_vertex {
            return Err(Error::violation(
                QVec::from(u.to_vec()),
                format!("log discrepancy routes disagree: {by_rays} vs {by_vertex}"),
            ));
        }
        Ok(by_rays)
    }

    /// Order of vanishing of `sum a_i D_i` along `v_u`.
    pub fn order_of(&self, coeffs: &[Rat], u: &[Rat]) -> Result<Rat> {
        if coeffs.len() != self.rays.len() {
            return Err(Error::DimensionMismatch("one coefficient per ray expected".into()));
        }
        let (idx, lambda) = self.locate(u)?;
        Ok(self.cones[idx]
            .rays
            .iter()
            .zip(lambda.iter())
            .fold(Rat::zero(), |acc, (&r, l)| acc + l * &coeffs[r]))
    }

    pub fn s_invariant(&self, u: &[Rat]) -> Result<Rat> {
        self.check_u(u)?;
        let (min, _) = self.polytope.minimize_linear(u)?;
        Ok(self.barycenter.dot(u) - min)
    }

    pub fn t_invariant(&self, u: &[Rat]) -> Result<Rat> {
        self.check_u(u)?;
        let (min, _) = self.polytope.minimize_linear(u)?;
        let (max, _) = self.polytope.maximize_linear(u)?;
        Ok(max - min)
    }

    /// Lattice points of `m P`, found by scanning the integer bounding box.
    pub fn lattice_points(&self, m: u32) -> Vec<Vec<i64>> {
        let scale = Rat::from_integer(BigInt::from(m));
        let bounds: Vec<(i64, i64)> = (0..self.dim)
            .map(|j| {
                let coords = self.polytope.vertices().iter().map(|v| &v[j] * &scale);
                let lo = coords.clone().min().expect("nonempty").floor().to_integer();
                let hi = coords.max().expect("nonempty").ceil().to_integer();
                (
                    i64::try_from(lo).expect("bounding box fits in i64"),
                    i64::try_from(hi).expect("bounding box fits in i64"),
                )
            })
            .collect();
        let m = i64::from(m);
        let mut points = Vec::new();
        let mut y: Vec<i64> = bounds.iter().map(|b| b.0).collect();
        loop {
            if self
                .rays
                .iter()
                .all(|r| r.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() >= -m)
            {
                points.push(y.clone());
            }
            let Some(j) = (0..self.dim).find(|&j| y[j] < bounds[j].1) else {
                break;
            };
            y[j] += 1;
            for (k, yk) in y.iter_mut().enumerate().take(j) {
                *yk = bounds[k].0;
            }
        }
        points
    }

    /// Basis-type approximation `S_m(v_u)`: the average of
    /// `<u, y> - m min_P <u, .>` over the lattice points `y` of `mP`, divided by `m`.
    pub fn s_m_invariant(&self, u: &[Rat], m: u32) -> Result<Rat> {
        self.check_u(u)?;
        if m == 0 {
            return Err(Error::InvalidInput("basis-type level m must be positive".into()));
        }
        let (min, _) = self.polytope.minimize_linear(u)?;
        let points = self.lattice_points(m);
        let shift = &min * Rat::from_integer(BigInt::from(m));
        let total = points.iter().fold(Rat::zero(), |acc, y| {
            acc + QVec::from_ints(y).dot(u) - &shift
        });
        let denom = Rat::from_integer(BigInt::from(m) * BigInt::from(points.len()));
        Ok(total / denom)
    }
}

impl ToricDivisor {
    fn validate(base: &ToricFanoModel, name: String, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != base.rays.len() {
            return Err(Error::InvalidInput(format!(
                "divisor `{name}` has {} coefficients for {} rays",
                coeffs.len(),
                base.rays.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.is_negative()) {
            return Err(Error::rejected(
                RejectReason::NotEffective,
                format!("divisor `{name}` has negative coefficient {c}"),
            ));
        }
        let a = QMat::with_cols(base.rays.iter().map(|r| QVec::from_ints(r)).collect(), base.dim)?;
        let shifted: Vec<Rat> = coeffs.iter().map(|c| c - Rat::one()).collect();
        let witness = solve_linear(&a, &shifted)?.ok_or_else(|| {
            Error::rejected(
                RejectReason::NotAnticanonical,
                format!("divisor `{name}` is not linearly equivalent to the anticanonical divisor"),
            )
        })?;
        let index = lcm_of_denominators(witness.iter().chain(coeffs.iter()));
        Ok(ToricDivisor {
            name,
            coeffs: QVec::new(coeffs),
            witness,
            index,
        })
    }
}

/// Validates rays and boundary divisors into a [`PairModel`].
pub fn validate_model(rays: Vec<Vec<i64>>, divisors: Vec<(String, Vec<Rat>)>) -> Result<PairModel> {
    let base = ToricFanoModel::new(rays)?;
    let divisors = divisors
        .into_iter()
        .map(|(name, coeffs)| ToricDivisor::validate(&base, name, coeffs))
        .collect::<Result<Vec<_>>>()?;
    Ok(PairModel { base, divisors })
}

impl PairModel {
    pub fn base(&self) -> &ToricFanoModel {
        &self.base
    }

    pub fn divisors(&self) -> &[ToricDivisor] {
        &self.divisors
    }

    pub fn k(&self) -> usize {
        self.divisors.len()
    }

    pub fn div_order(&self, divisor: usize, u: &[Rat]) -> Result<Rat> {
        let d = self
            .divisors
            .get(divisor)
            .ok_or_else(|| Error::InvalidInput(format!("no divisor with index {divisor}")))?;
        self.base.order_of(&d.coeffs, u)
    }

    /// Coefficient of `D_{r_i}` in `sum_j x_j D_j`.
    pub fn boundary_coefficient(&self, x: &[Rat], ray: usize) -> Rat {
        self.divisors
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (d, xj)| acc + xj * &d.coeffs[ray])
    }

    /// `S_{X, sum x_j D_j}(v_u)` computed from the polytope of
    /// `-(K_X + sum x_j D_j)` directly, without the scaling relation.
    pub fn pair_s_invariant(&self, x: &[Rat], u: &[Rat]) -> Result<Rat> {
        if x.len() != self.k() {
            return Err(Error::DimensionMismatch("coefficient vector length differs from k".into()));
        }
        self.base.check_u(u)?;
        let halfspaces = (0..self.base.rays.len())
            .map(|i| {
                let bound = -(Rat::one() - self.boundary_coefficient(x, i));
                Halfspace::ge(self.base.ray(i), bound)
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Polytope::from_halfspaces(self.base.dim, halfspaces)?;
        let bary = p.barycenter()?;
        let (min, _) = p.minimize_linear(u)?;
        Ok(bary.dot(u) - min)
    }
}
