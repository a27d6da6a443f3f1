//! Exact rational toolkit for K-semistable domains of log Fano pairs.
//!
//! Pairs are given either as toric models (fan rays plus torus-invariant
//! boundary divisors) or as finite valuation tables. Everything is computed
//! over the rationals: polytopes, valuation invariants, domains, and the
//! chamber decomposition of the coefficient simplex.

pub mod chambers;
pub mod domains;
mod error;
pub mod hyperplane;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod sampling;
#[cfg(test)]
mod testing;
pub mod toric;
pub mod wire;

pub use error::{Error, RejectReason, Result};
pub use hyperplane::{affine_hull, hyperplane_through_points, vertex_from_facets, Hyperplane};
pub use polytope::{separates, Halfspace, Polytope, Side};
pub use rational::{parse_rat, rat, QMat, QVec, Rat};
