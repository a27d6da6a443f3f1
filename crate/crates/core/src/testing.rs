//! Fixture models shared by unit tests.

use crate::domains::{Model, TableRow, ValuationTable};
use crate::polytope::Halfspace;
use crate::rational::{int, rat, QVec, Rat};
use crate::toric::validate_model;

pub(crate) fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&a| int(a)).collect()
}

pub(crate) fn toric(rays: &[&[i64]], divisors: &[&[i64]]) -> Model {
    let rays = rays.iter().map(|r| r.to_vec()).collect();
    let divisors = divisors
        .iter()
        .enumerate()
        .map(|(j, d)| (format!("D{}", j + 1), ints(d)))
        .collect();
    Model::toric("m", validate_model(rays, divisors).unwrap()).unwrap()
}

pub(crate) const P1: &[&[i64]] = &[&[1], &[-1]];
pub(crate) const P2: &[&[i64]] = &[&[-1, -1], &[1, 0], &[0, 1]];
pub(crate) const F1: &[&[i64]] = &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]];

pub(crate) fn model_a() -> Model {
    toric(P1, &[&[2, 0], &[0, 2]]).renamed("A")
}
pub(crate) fn model_b() -> Model {
    toric(P2, &[&[0, 3, 0]]).renamed("B")
}
pub(crate) fn model_c() -> Model {
    toric(P2, &[&[1, 1, 1]]).renamed("C")
}
pub(crate) fn model_d() -> Model {
    toric(F1, &[&[1, 1, 1, 1]]).renamed("D")
}
pub(crate) fn model_e() -> Model {
    toric(P2, &[&[0, 3, 0], &[1, 1, 1]]).renamed("E")
}
pub(crate) fn model_t() -> Model {
    let rows = vec![
        TableRow {
            label: "E1".into(),
            log_discrepancy: int(1),
            s: int(2),
            ord: QVec::from_ints(&[0]),
        },
        TableRow {
            label: "E2".into(),
            log_discrepancy: int(1),
            s: rat(1, 2),
            ord: QVec::from_ints(&[1]),
        },
    ];
    let lc = vec![Halfspace::le(QVec::from_ints(&[1]), int(1)).unwrap()];
    Model::table("T", ValuationTable::new(1, rows, lc, false).unwrap())
}

