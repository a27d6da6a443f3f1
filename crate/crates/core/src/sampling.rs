//! Seeded random rational points for property checks.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::rational::{QVec, Rat};

pub use rand::SeedableRng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Convex combination of `points` with integer weights in `1..=max_weight`,
/// so the result lies in the relative interior of their convex hull.
pub fn interior_combination(points: &[QVec], rng: &mut SampleRng, max_weight: u32) -> QVec {
    assert!(!points.is_empty(), "no points to combine");
    let weights: Vec<u32> = points.iter().map(|_| rng.gen_range(1..=max_weight)).collect();
    combine(points, &weights)
}

/// Convex combination with weights in `0..=max_weight` (not all zero).
pub fn closed_combination(points: &[QVec], rng: &mut SampleRng, max_weight: u32) -> QVec {
    assert!(!points.is_empty(), "no points to combine");
    loop {
        let weights: Vec<u32> = points.iter().map(|_| rng.gen_range(0..=max_weight)).collect();
        if weights.iter().any(|&w| w > 0) {
            return combine(points, &weights);
        }
    }
}

fn combine(points: &[QVec], weights: &[u32]) -> QVec {
    let total: u32 = weights.iter().sum();
    let n = points[0].len();
    let sum = points
        .iter()
        .zip(weights)
        .fold(QVec::zeros(n), |acc, (p, &w)| acc.add(&p.scale(&Rat::from_integer(BigInt::from(w)))));
    sum.scale(&Rat::new(1.into(), BigInt::from(total)))
}

/// Rational point of the closed standard simplex in `Q^k`.
pub fn simplex_point(k: usize, rng: &mut SampleRng, max_weight: u32) -> QVec {
    let mut corners = vec![QVec::zeros(k)];
    corners.extend((0..k).map(|j| QVec::unit(k, j)));
    closed_combination(&corners, rng, max_weight)
}
