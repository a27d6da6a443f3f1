//! Beta forms, log-canonical polytopes, K-semistable domains and delta.
//!
//! For a coefficient vector `x` in the closed simplex and a valuation `E`
//! with data `(A, S, ord_1..ord_k)` the beta form is
//!
//! `beta_E(x) = A - sum_j x_j ord_j - (1 - sum_j x_j) S
//!            = (A - S) + sum_j x_j (S - ord_j)`,
//!
//! and the domain is the simplex cut by the log-canonical constraints and
//! `beta_E >= 0` for every supplied valuation.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::hyperplane::Hyperplane;
use crate::polytope::{simplex_halfspaces, Halfspace, Polytope};
use crate::rational::{QVec, Rat};
use crate::sampling;
use crate::toric::PairModel;
use crate::{Error, RejectReason, Result};

/// One valuation with its log discrepancy, S-invariant and orders along the boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub label: String,
    pub log_discrepancy: Rat,
    pub s: Rat,
    pub ord: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub log_discrepancy: Rat,
    pub s: Rat,
    pub ord: QVec,
}

/// Finite table of valuations for pairs without a toric description.
#[derive(Clone, Debug)]
pub struct ValuationTable {
    k: usize,
    rows: Vec<TableRow>,
    lc_halfspaces: Vec<Halfspace>,
    certified: bool,
}

impl ValuationTable {
    pub fn new(k: usize, rows: Vec<TableRow>, lc_halfspaces: Vec<Halfspace>, certified: bool) -> Result<Self> {
        let reject = |msg: String| Error::rejected(RejectReason::InvalidTable, msg);
        let mut labels = std::collections::BTreeSet::new();
        for row in &rows {
            if !labels.insert(row.label.as_str()) {
                return Err(reject(format!("duplicate row label `{}`", row.label)));
            }
            if row.ord.len() != k {
                return Err(Error::InvalidInput(format!(
                    "row `{}` has {} orders, expected {k}",
                    row.label,
                    row.ord.len()
                )));
            }
            if !row.log_discrepancy.is_positive() || !row.s.is_positive() {
                return Err(reject(format!("row `{}` needs A > 0 and S > 0", row.label)));
            }
            if row.ord.iter().any(Signed::is_negative) {
                return Err(reject(format!("row `{}` has a negative order", row.label)));
            }
        }
        if lc_halfspaces.iter().any(|h| h.ambient() != k) {
            return Err(Error::InvalidInput("lc halfspace of the wrong dimension".into()));
        }
        Ok(ValuationTable {
            k,
            rows,
            lc_halfspaces,
            certified,
        })
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn lc_halfspaces(&self) -> &[Halfspace] {
        &self.lc_halfspaces
    }

    pub fn certified(&self) -> bool {
        self.certified
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Toric(PairModel),
    Table(ValuationTable),
}

/// A named pair, either toric or tabulated, with its valuation data cached.
#[derive(Clone, Debug)]
pub struct Model {
    name: String,
    source: Source,
    valuations: Vec<Valuation>,
}

impl Model {
    pub fn toric(name: impl Into<String>, pair: PairModel) -> Result<Self> {
        let base = pair.base();
        let mut valuations = Vec::with_capacity(base.rays().len());
        for i in 0..base.rays().len() {
            let r = base.ray(i);
            let ord = (0..pair.k()).map(|j| pair.div_order(j, &r)).collect::<Result<QVec>>()?;
            valuations.push(Valuation {
                label: base.ray_label(i),
                log_discrepancy: base.log_discrepancy(&r)?,
                s: base.s_invariant(&r)?,
                ord,
            });
        }
        Ok(Model {
            name: name.into(),
            source: Source::Toric(pair),
            valuations,
        })
    }

    pub fn table(name: impl Into<String>, table: ValuationTable) -> Self {
        let valuations = table
            .rows
            .iter()
            .map(|r| Valuation {
                label: r.label.clone(),
                log_discrepancy: r.log_discrepancy.clone(),
                s: r.s.clone(),
                ord: r.ord.clone(),
            })
            .collect();
        Model {
            name: name.into(),
            source: Source::Table(table),
            valuations,
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn k(&self) -> usize {
        match &self.source {
            Source::Toric(p) => p.k(),
            Source::Table(t) => t.k,
        }
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    /// Toric results quantify over all rays; tables only when the user says so.
    pub fn certified(&self) -> bool {
        match &self.source {
            Source::Toric(_) => true,
            Source::Table(t) => t.certified,
        }
    }

    pub fn beta_form(&self, label: &str) -> Result<BetaForm> {
        self.valuations
            .iter()
            .find(|v| v.label == label)
            .map(BetaForm::of)
            .ok_or_else(|| Error::UnknownValuation(label.to_string()))
    }

    pub fn beta_forms(&self) -> Vec<BetaForm> {
        self.valuations.iter().map(BetaForm::of).collect()
    }

    /// Log-canonical constraints other than `x >= 0`, each with a source tag.
    fn lc_constraints(&self) -> Result<Vec<(Halfspace, String)>> {
        let mut out = Vec::new();
        match &self.source {
            Source::Toric(pair) => {
                let k = pair.k();
                for i in 0..pair.base().rays().len() {
                    // coefficient of D_{r_i} in sum x_j D_j stays <= 1
                    let row: QVec = pair.divisors().iter().map(|d| d.coeffs[i].clone()).collect();
                    if row.is_zero() {
                        continue;
                    }
                    debug_assert_eq!(row.len(), k);
                    out.push((Halfspace::le(row, Rat::one())?, format!("lc:{}", pair.base().ray_label(i))));
                }
            }
            Source::Table(table) => {
                for (i, h) in table.lc_halfspaces.iter().enumerate() {
                    out.push((h.clone(), format!("lc:{i}")));
                }
            }
        }
        Ok(out)
    }

    fn simplex_constraints(&self) -> Vec<(Halfspace, String)> {
        let k = self.k();
        simplex_halfspaces(k)
            .into_iter()
            .enumerate()
            .map(|(j, h)| {
                let tag = if j < k { format!("simplex:x{}>=0", j + 1) } else { "simplex:sum<=1".to_string() };
                (h, tag)
            })
            .collect()
    }

    /// Coefficient vectors for which the pair is log canonical.
    pub fn lc_polytope(&self) -> Result<Polytope> {
        let k = self.k();
        let mut hs: Vec<Halfspace> = self.lc_constraints()?.into_iter().map(|(h, _)| h).collect();
        match &self.source {
            Source::Toric(_) => hs.extend(simplex_halfspaces(k).into_iter().take(k)),
            Source::Table(_) => hs.extend(simplex_halfspaces(k)),
        }
        Polytope::from_halfspaces(k, hs)
    }

    /// Strict log-canonical constraints: the pair `(X, sum x_j D_j)` is klt.
    pub fn is_klt(&self, x: &[Rat]) -> bool {
        match &self.source {
            Source::Toric(pair) => (0..pair.base().rays().len()).all(|i| pair.boundary_coefficient(x, i) < Rat::one()),
            Source::Table(table) => table.lc_halfspaces.iter().all(|h| h.slack(x).is_positive()),
        }
    }

    pub fn kss_domain(&self) -> Result<KssDomainResult> {
        let k = self.k();
        let mut constraints = self.simplex_constraints();
        constraints.extend(self.lc_constraints()?);
        let mut infeasible = false;
        for beta in self.beta_forms() {
            if beta.coeffs.is_zero() {
                infeasible |= beta.constant.is_negative();
                continue;
            }
            let h = Halfspace::ge(beta.coeffs.clone(), -beta.constant.clone())?;
            constraints.push((h, format!("beta:{}", beta.label)));
        }
        let domain = if infeasible {
            Polytope::empty(k)
        } else {
            Polytope::from_halfspaces(k, constraints.iter().map(|(h, _)| h.clone()).collect())?
        };

        let facet_provenance = domain
            .facet_hyperplanes()
            .into_iter()
            .map(|hp| {
                let sources = constraints
                    .iter()
                    .filter(|(h, _)| h.boundary() == &hp)
                    .map(|(_, tag)| tag.clone())
                    .collect();
                (hp, sources)
            })
            .collect();

        let (mu, interval) = if domain.is_empty() {
            (None, None)
        } else {
            let ones: QVec = (0..k).map(|_| Rat::one()).collect();
            let (mu, _) = domain.minimize_linear(&ones)?;
            let interval = if k == 1 {
                let (lo, _) = domain.minimize_linear(&[Rat::one()])?;
                let (hi, _) = domain.maximize_linear(&[Rat::one()])?;
                Some((lo, hi))
            } else {
                None
            };
            (Some(mu), interval)
        };
        let in_e = mu.as_ref().is_some_and(|m| *m < Rat::one());
        let cy_face_only = mu.as_ref().is_some_and(|m| m.is_one());
        Ok(KssDomainResult {
            domain,
            in_e,
            gap: mu.as_ref().map(|m| Rat::one() - m),
            mu,
            interval,
            certified: self.certified(),
            cy_face_only,
            facet_provenance,
        })
    }

    /// Pointwise K-semistability of `(X, sum x_j D_j)`.
    pub fn delta_at(&self, x: &[Rat]) -> Result<DeltaReport> {
        let k = self.k();
        if x.len() != k {
            return Err(Error::DimensionMismatch(format!("expected {k} coefficients, got {}", x.len())));
        }
        let x = QVec::new(x.to_vec());
        let total = x.sum();
        if x.iter().any(Signed::is_negative) || total > Rat::one() {
            return Err(Error::Domain(format!("{x} is outside the closed simplex")));
        }
        let report = |status, delta: Option<Rat>, minimizer| DeltaReport {
            x: x.clone(),
            status,
            delta_tilde: delta.as_ref().map(|d| d.clone().min(Rat::one())),
            delta,
            minimizer,
        };
        if total.is_one() {
            let status = if self.lc_polytope()?.contains(&x) { Status::CyLc } else { Status::CyNotLc };
            return Ok(report(status, None, None));
        }
        if !self.is_klt(&x) {
            return Ok(report(Status::NotLogFano, None, None));
        }
        let scale = Rat::one() - &total;
        let mut best: Option<(Rat, &str)> = None;
        for v in &self.valuations {
            let ratio = (&v.log_discrepancy - v.ord.dot(&x)) / (&scale * &v.s);
            if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                best = Some((ratio, &v.label));
            }
        }
        let Some((delta, label)) = best else {
            return Err(Error::InvalidInput(format!("model `{}` has no valuations", self.name)));
        };
        let status = if delta >= Rat::one() { Status::Kss } else { Status::Unstable };
        Ok(report(status, Some(delta), Some(label.to_string())))
    }

    /// Samples points inside and outside the domain and checks that pointwise
    /// delta agrees with polytope membership. For toric models delta is also
    /// recomputed from the S-invariants of the twisted pair.
    pub fn consistency_check(&self, samples: usize, seed: u64) -> Result<ConsistencyReport> {
        let result = self.kss_domain()?;
        let domain = &result.domain;
        let k = self.k();
        let mut rng = sampling::rng(seed);
        let mut report = ConsistencyReport::default();

        if !domain.is_empty() {
            for _ in 0..samples {
                let x = sampling::closed_combination(domain.vertices(), &mut rng, 24);
                let d = self.delta_at(&x)?;
                if !d.status.is_semistable() {
                    return Err(Error::violation(&x, format!("inside the domain but {}", d.status)));
                }
                report.inside += 1;
                report.scaling_checks += self.check_scaling(&x, &d)?;
            }
        }
        let mut attempts = 0;
        while report.outside < samples && attempts < samples * 50 {
            attempts += 1;
            let x = sampling::simplex_point(k, &mut rng, 24);
            if domain.contains(&x) {
                continue;
            }
            let d = self.delta_at(&x)?;
            if d.status.is_semistable() {
                return Err(Error::violation(&x, format!("outside the domain but {}", d.status)));
            }
            report.outside += 1;
            report.scaling_checks += self.check_scaling(&x, &d)?;
        }
        Ok(report)
    }

    fn check_scaling(&self, x: &QVec, report: &DeltaReport) -> Result<usize> {
        let (Source::Toric(pair), Some(delta)) = (&self.source, &report.delta) else {
            return Ok(0);
        };
        let scale = Rat::one() - x.sum();
        let mut direct: Option<Rat> = None;
        for (i, v) in self.valuations.iter().enumerate() {
            let r = pair.base().ray(i);
            let s_pair = pair.pair_s_invariant(x, &r)?;
            if s_pair != &scale * &v.s {
                return Err(Error::violation(
                    x,
                    format!("S of the pair along {} is {s_pair}, expected (1 - |x|) S = {}", v.label, &scale * &v.s),
                ));
            }
            let ratio = (&v.log_discrepancy - v.ord.dot(x)) / s_pair;
            direct = Some(direct.map_or(ratio.clone(), |d| d.min(ratio)));
        }
        if direct.as_ref() != Some(delta) {
            return Err(Error::violation(x, "delta from the twisted pair differs"));
        }
        Ok(self.valuations.len())
    }
}

/// Affine form `x -> constant + <coeffs, x>` attached to one valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaForm {
    pub label: String,
    pub constant: Rat,
    pub coeffs: QVec,
}

impl BetaForm {
    fn of(v: &Valuation) -> Self {
        BetaForm {
            label: v.label.clone(),
            constant: &v.log_discrepancy - &v.s,
            coeffs: v.ord.iter().map(|o| &v.s - o).collect(),
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        &self.constant + self.coeffs.dot(x)
    }

    /// The zero set, when the form is not constant.
    pub fn hyperplane(&self) -> Option<Hyperplane> {
        Hyperplane::new(self.coeffs.clone(), -self.constant.clone()).ok()
    }
}

/// `A - sum x_j ord_j - (1 - sum x_j) S`, evaluated term by term.
pub fn beta_direct(v: &Valuation, x: &[Rat]) -> Rat {
    let total: Rat = x.iter().sum();
    &v.log_discrepancy - v.ord.dot(x) - (Rat::one() - total) * &v.s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Kss,
    Unstable,
    CyLc,
    CyNotLc,
    NotLogFano,
}

impl Status {
    pub const ALL: [Status; 5] = [Status::Kss, Status::Unstable, Status::CyLc, Status::CyNotLc, Status::NotLogFano];

    /// K-semistable in the log Fano or log Calabi-Yau sense.
    pub fn is_semistable(self) -> bool {
        matches!(self, Status::Kss | Status::CyLc)
    }

    pub fn code(self) -> &'static str {
        match self {
            Status::Kss => "KSS",
            Status::Unstable => "UNSTABLE",
            Status::CyLc => "CY_LC",
            Status::CyNotLc => "CY_NOT_LC",
            Status::NotLogFano => "NOT_LOG_FANO",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug)]
pub struct KssDomainResult {
    pub domain: Polytope,
    pub in_e: bool,
    /// Minimum of `sum x_j` over the domain; absent for an empty domain.
    pub mu: Option<Rat>,
    pub gap: Option<Rat>,
    pub interval: Option<(Rat, Rat)>,
    pub certified: bool,
    /// Nonempty domain lying entirely on `sum x_j = 1`. The closure of the
    /// semistable locus inside the open simplex is then empty.
    pub cy_face_only: bool,
    pub facet_provenance: Vec<(Hyperplane, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub x: QVec,
    pub status: Status,
    pub delta: Option<Rat>,
    pub delta_tilde: Option<Rat>,
    pub minimizer: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub inside: usize,
    pub outside: usize,
    pub scaling_checks: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::testing::*;

    #[test]
    fn beta_forms_match_hand_values() {
        let b = model_b().beta_form("ray(1,0)").unwrap();
        assert_eq!(b.constant, int(0));
        assert_eq!(b.coeffs, QVec::from_ints(&[-2]));
        let a = model_a().beta_form("ray(1)").unwrap();
        assert_eq!(a.constant, int(0));
        assert_eq!(a.coeffs, QVec::from_ints(&[-1, 1]));
        for f in model_c().beta_forms() {
            assert_eq!(f.constant, int(0));
            assert!(f.coeffs.is_zero());
        }
        assert!(matches!(model_b().beta_form("nope"), Err(Error::UnknownValuation(_))));
    }

    #[test]
    fn lc_polytopes() {
        let a = model_a().lc_polytope().unwrap();
        let square = Polytope::from_halfspaces(
            2,
            vec![
                Halfspace::ge(QVec::from_ints(&[1, 0]), int(0)).unwrap(),
                Halfspace::ge(QVec::from_ints(&[0, 1]), int(0)).unwrap(),
                Halfspace::le(QVec::from_ints(&[1, 0]), rat(1, 2)).unwrap(),
                Halfspace::le(QVec::from_ints(&[0, 1]), rat(1, 2)).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a, square);
        assert_eq!(model_c().lc_polytope().unwrap().vertices(), &[QVec::from_ints(&[0]), QVec::from_ints(&[1])]);
        let e = model_e().lc_polytope().unwrap();
        assert_eq!(
            e.vertices(),
            &[
                QVec::from_ints(&[0, 0]),
                QVec::from_ints(&[0, 1]),
                QVec::new(vec![rat(1, 3), int(0)]),
            ]
        );
    }

    #[test]
    fn fixture_domains() {
        let a = model_a().kss_domain().unwrap();
        assert_eq!(a.domain.vertices(), &[QVec::from_ints(&[0, 0]), QVec::new(vec![rat(1, 2), rat(1, 2)])]);
        assert_eq!(a.domain.dim(), 1);
        assert!(a.in_e);
        assert_eq!(a.mu, Some(int(0)));

        let b = model_b().kss_domain().unwrap();
        assert_eq!(b.domain.vertices(), &[QVec::from_ints(&[0])]);
        assert_eq!(b.interval, Some((int(0), int(0))));
        assert!(b.in_e);

        let c = model_c().kss_domain().unwrap();
        assert_eq!(c.interval, Some((int(0), int(1))));

        let d = model_d().kss_domain().unwrap();
        assert_eq!(d.domain.vertices(), &[QVec::from_ints(&[1])]);
        assert!(!d.in_e);
        assert!(d.cy_face_only);
        assert_eq!(d.gap, Some(int(0)));

        let e = model_e().kss_domain().unwrap();
        assert_eq!(e.domain.vertices(), &[QVec::from_ints(&[0, 0]), QVec::from_ints(&[0, 1])]);

        let t = model_t().kss_domain().unwrap();
        assert_eq!(t.interval, Some((rat(1, 2), int(1))));
        assert_eq!(t.mu, Some(rat(1, 2)));
        assert_eq!(t.gap, Some(rat(1, 2)));
        assert!(!t.certified);
    }

    #[test]
    fn provenance_names_beta_and_simplex() {
        let t = model_t().kss_domain().unwrap();
        let tags: Vec<Vec<String>> = t.facet_provenance.iter().map(|(_, s)| s.clone()).collect();
        assert!(tags.iter().any(|s| s.contains(&"beta:E1".to_string())));
        let b = model_b().kss_domain().unwrap();
        for (hp, sources) in &b.facet_provenance {
            assert_eq!(hp.to_string(), "x1 = 0");
            assert!(sources.contains(&"beta:ray(1,0)".to_string()));
            assert!(sources.contains(&"simplex:x1>=0".to_string()));
        }
    }

    #[test]
    fn delta_examples() {
        let f1 = toric(F1, &[]);
        let r = f1.delta_at(&[]).unwrap();
        assert_eq!(r.delta, Some(rat(6, 7)));
        assert_eq!(r.minimizer.as_deref(), Some("ray(0,1)"));
        assert_eq!(r.status, Status::Unstable);

        let p2 = toric(P2, &[]);
        let r = p2.delta_at(&[]).unwrap();
        assert_eq!(r.delta, Some(int(1)));
        assert_eq!(r.status, Status::Kss);

        let r = model_b().delta_at(&[rat(1, 4)]).unwrap();
        assert_eq!(r.delta, Some(rat(1, 3)));
        assert_eq!(r.minimizer.as_deref(), Some("ray(1,0)"));
        assert_eq!(r.status, Status::Unstable);

        let r = model_a().delta_at(&[rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(r.delta, Some(int(1)));
        assert_eq!(r.delta_tilde, Some(int(1)));
        assert_eq!(r.status, Status::Kss);
    }

    #[test]
    fn delta_boundary_cases() {
        let d = model_d();
        assert_eq!(d.delta_at(&[int(1)]).unwrap().status, Status::CyLc);
        let a = model_a();
        assert_eq!(a.delta_at(&[int(1), int(0)]).unwrap().status, Status::CyNotLc);
        assert_eq!(a.delta_at(&[rat(1, 2), rat(1, 4)]).unwrap().status, Status::NotLogFano);
        assert!(matches!(a.delta_at(&[int(1), int(1)]), Err(Error::Domain(_))));
        assert!(matches!(a.delta_at(&[int(1)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn consistency_on_fixtures() {
        for m in [model_a(), model_b(), model_c(), model_d(), model_e(), model_t()] {
            let r = m.consistency_check(100, 7).unwrap();
            assert!(r.outside > 0 || m.kss_domain().unwrap().domain == Polytope::simplex(m.k()));
        }
    }

    #[test]
    fn table_validation() {
        let row = |a: i64, s: i64, o: i64| TableRow {
            label: "E".into(),
            log_discrepancy: int(a),
            s: int(s),
            ord: QVec::from_ints(&[o]),
        };
        for bad in [row(0, 1, 0), row(1, 0, 0), row(1, 1, -1)] {
            let err = ValuationTable::new(1, vec![bad], vec![], false).unwrap_err();
            assert!(matches!(err, Error::Rejected { reason: RejectReason::InvalidTable, .. }));
        }
    }
}
