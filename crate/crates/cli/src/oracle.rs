//! Brute-force comparison of pointwise delta against domain membership.

use std::collections::BTreeMap;

use kss_core::domains::{Model, Status};
use kss_core::wire::{wire_vec, WireRat};
use kss_core::{rat, Error, QVec};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub x: Vec<WireRat>,
    pub status: Status,
    pub in_domain: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub model: String,
    pub n: u32,
    pub points: usize,
    pub counts: BTreeMap<Status, usize>,
    pub mismatches: Vec<Mismatch>,
}

/// Integer tuples `i` with `i_j >= 0` and `sum i_j <= n`, in lexicographic order.
fn grid(k: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn fill(k: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in 0..=budget {
            current.push(i);
            fill(k, budget - i, current, out);
            current.pop();
        }
    }
    fill(k, n, &mut current, &mut out);
    out
}

/// Classifies every point of `(1/n) Z^k` in the closed simplex by delta and
/// by membership in the computed domain. Points on the closed domain count
/// as inside.
pub fn grid_oracle(model: &Model, n: u32) -> Result<OracleReport, Error> {
    if n < 2 {
        return Err(Error::InvalidInput("grid resolution must be at least 2".into()));
    }
    let domain = model.kss_domain()?.domain;
    let classified: Vec<(QVec, Status, bool)> = grid(model.k(), n)
        .into_par_iter()
        .map(|idx| {
            let x: QVec = idx.iter().map(|&i| rat(i64::from(i), i64::from(n))).collect();
            let status = model.delta_at(&x)?.status;
            let inside = domain.contains(&x);
            Ok((x, status, inside))
        })
        .collect::<Result<_, Error>>()?;

    let mut counts: BTreeMap<Status, usize> = Status::ALL.iter().map(|&s| (s, 0)).collect();
    let mut mismatches = Vec::new();
    for (x, status, inside) in &classified {
        *counts.entry(*status).or_default() += 1;
        if status.is_semistable() != *inside {
            mismatches.push(Mismatch {
                x: wire_vec(x),
                status: *status,
                in_domain: *inside,
            });
        }
    }
    Ok(OracleReport {
        model: model.name().to_string(),
        n,
        points: classified.len(),
        counts,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(grid(1, 60).len(), 61);
        assert_eq!(grid(2, 4).len(), 15);
        assert_eq!(grid(0, 5), vec![Vec::<u32>::new()]);
    }
}
