//! JSON shapes for models and results. Every rational travels as a string
//! `"p/q"` or `"p"`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::chambers::{ChamberComplex, CrossingReport};
use crate::domains::{DeltaReport, KssDomainResult, Model, Status, TableRow, ValuationTable};
use crate::hyperplane::Hyperplane;
use crate::polytope::{Halfspace, Polytope};
use crate::rational::{fmt_rat, parse_rat, QVec, Rat};
use crate::toric::validate_model;
use crate::{Error, Result};

/// A rational that serializes as a canonical string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WireRat(pub Rat);

impl Serialize for WireRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&fmt_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for WireRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RatVisitor;

        impl Visitor<'_> for RatVisitor {
            type Value = WireRat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string such as \"3/4\" or \"-2\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<WireRat, E> {
                parse_rat(v).map(WireRat).map_err(E::custom)
            }
        }

        deserializer.deserialize_str(RatVisitor)
    }
}

pub fn wire_vec(v: &[Rat]) -> Vec<WireRat> {
    v.iter().cloned().map(WireRat).collect()
}

fn unwire(v: Vec<WireRat>) -> QVec {
    v.into_iter().map(|r| r.0).collect()
}

/// `<normal, x> = offset` for hyperplanes, `<normal, x> >= offset` for halfspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearJson {
    pub normal: Vec<WireRat>,
    pub offset: WireRat,
}

impl LinearJson {
    pub fn of_hyperplane(h: &Hyperplane) -> Self {
        LinearJson {
            normal: wire_vec(h.normal()),
            offset: WireRat(h.offset().clone()),
        }
    }

    pub fn of_halfspace(h: &Halfspace) -> Self {
        let (normal, offset) = h.oriented();
        LinearJson {
            normal: wire_vec(&normal),
            offset: WireRat(offset),
        }
    }

    pub fn to_halfspace(&self) -> Result<Halfspace> {
        Halfspace::ge(unwire(self.normal.clone()), self.offset.0.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneJson {
    pub normal: Vec<WireRat>,
    pub offset: WireRat,
    pub equation: String,
}

impl HyperplaneJson {
    pub fn of(h: &Hyperplane) -> Self {
        HyperplaneJson {
            normal: wire_vec(h.normal()),
            offset: WireRat(h.offset().clone()),
            equation: h.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeJson {
    pub ambient: usize,
    pub halfspaces: Vec<LinearJson>,
    pub vertices: Vec<Vec<WireRat>>,
    pub dim: isize,
}

impl PolytopeJson {
    pub fn of(p: &Polytope) -> Self {
        PolytopeJson {
            ambient: p.ambient(),
            halfspaces: p.halfspaces().iter().map(LinearJson::of_halfspace).collect(),
            vertices: p.vertices().iter().map(|v| wire_vec(v)).collect(),
            dim: p.dim(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProvenanceJson {
    pub hyperplane: HyperplaneJson,
    pub sources: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KssDomainJson {
    pub model: String,
    #[serde(flatten)]
    pub polytope: PolytopeJson,
    #[serde(rename = "in_E")]
    pub in_e: bool,
    pub mu: Option<WireRat>,
    pub gap: Option<WireRat>,
    pub interval: Option<[WireRat; 2]>,
    pub certified: bool,
    pub cy_face_only: bool,
    pub facet_provenance: Vec<ProvenanceJson>,
}

impl KssDomainJson {
    pub fn of(model: &str, r: &KssDomainResult) -> Self {
        KssDomainJson {
            model: model.to_string(),
            polytope: PolytopeJson::of(&r.domain),
            in_e: r.in_e,
            mu: r.mu.clone().map(WireRat),
            gap: r.gap.clone().map(WireRat),
            interval: r.interval.clone().map(|(l, u)| [WireRat(l), WireRat(u)]),
            certified: r.certified,
            cy_face_only: r.cy_face_only,
            facet_provenance: r
                .facet_provenance
                .iter()
                .map(|(h, sources)| ProvenanceJson {
                    hyperplane: HyperplaneJson::of(h),
                    sources: sources.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaJson {
    pub x: Vec<WireRat>,
    pub status: Status,
    pub delta: Option<WireRat>,
    pub delta_tilde: Option<WireRat>,
    pub minimizer: Option<String>,
}

impl DeltaJson {
    pub fn of(r: &DeltaReport) -> Self {
        DeltaJson {
            x: wire_vec(&r.x),
            status: r.status,
            delta: r.delta.clone().map(WireRat),
            delta_tilde: r.delta_tilde.clone().map(WireRat),
            minimizer: r.minimizer.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberJson {
    pub sign_vector: String,
    pub vertices: Vec<Vec<WireRat>>,
    pub sample: Vec<WireRat>,
    pub volume: WireRat,
    pub statuses: BTreeMap<String, Status>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeJson {
    pub a: usize,
    pub b: usize,
    pub wall_index: usize,
    pub wall: HyperplaneJson,
    pub changed_models: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberComplexJson {
    pub k: usize,
    pub walls: Vec<HyperplaneJson>,
    pub chambers: Vec<ChamberJson>,
    pub edges: Vec<EdgeJson>,
}

impl ChamberComplexJson {
    pub fn of(c: &ChamberComplex) -> Self {
        let walls = c.walls.walls();
        ChamberComplexJson {
            k: c.k(),
            walls: walls.iter().map(HyperplaneJson::of).collect(),
            chambers: c
                .chambers
                .iter()
                .map(|ch| ChamberJson {
                    sign_vector: ch.sign_vector.clone(),
                    vertices: ch.closure.vertices().iter().map(|v| wire_vec(v)).collect(),
                    sample: wire_vec(&ch.sample),
                    volume: WireRat(ch.closure.volume()),
                    statuses: ch.statuses.clone(),
                })
                .collect(),
            edges: c
                .edges
                .iter()
                .map(|e| EdgeJson {
                    a: e.a,
                    b: e.b,
                    wall_index: e.wall,
                    wall: HyperplaneJson::of(&walls[e.wall]),
                    changed_models: e.changed_models.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingJson {
    pub t: WireRat,
    pub point: Vec<WireRat>,
    pub walls: Vec<HyperplaneJson>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceJson {
    pub from_t: WireRat,
    pub to_t: WireRat,
    pub sample: Vec<WireRat>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingReportJson {
    pub model: String,
    pub from: Vec<WireRat>,
    pub to: Vec<WireRat>,
    pub crossings: Vec<CrossingJson>,
    pub pieces: Vec<PieceJson>,
}

impl CrossingReportJson {
    pub fn of(complex: &ChamberComplex, r: &CrossingReport) -> Self {
        let walls = complex.walls.walls();
        CrossingReportJson {
            model: r.model.clone(),
            from: wire_vec(&r.from),
            to: wire_vec(&r.to),
            crossings: r
                .crossings
                .iter()
                .map(|c| CrossingJson {
                    t: WireRat(c.t.clone()),
                    point: wire_vec(&c.point),
                    walls: c.walls.iter().map(|&i| HyperplaneJson::of(&walls[i])).collect(),
                    status: c.status,
                })
                .collect(),
            pieces: r
                .pieces
                .iter()
                .map(|p| PieceJson {
                    from_t: WireRat(p.from_t.clone()),
                    to_t: WireRat(p.to_t.clone()),
                    sample: wire_vec(&p.sample),
                    status: p.status,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub name: String,
    pub coeffs: Vec<WireRat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowJson {
    pub label: String,
    #[serde(rename = "A")]
    pub a: WireRat,
    #[serde(rename = "S")]
    pub s: WireRat,
    pub ord: Vec<WireRat>,
}

/// Input description of a model.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelJson {
    Toric {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        dim: usize,
        rays: Vec<Vec<i64>>,
        divisors: Vec<DivisorJson>,
    },
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        k: usize,
        rows: Vec<RowJson>,
        #[serde(default)]
        lc_halfspaces: Vec<LinearJson>,
        certified: bool,
    },
}

impl ModelJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed model: {e}")))
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        serde_json::from_value(value).map_err(|e| Error::InvalidInput(format!("malformed model: {e}")))
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            ModelJson::Toric { name, .. } | ModelJson::Table { name, .. } => name.as_deref(),
        }
    }

    /// Validates and builds the model; `fallback` names it when the JSON does not.
    pub fn build(&self, fallback: &str) -> Result<Model> {
        let name = self.name().unwrap_or(fallback).to_string();
        match self {
            ModelJson::Toric { dim, rays, divisors, .. } => {
                if let Some(bad) = rays.iter().find(|r| r.len() != *dim) {
                    return Err(Error::InvalidInput(format!("ray {bad:?} does not have length {dim}")));
                }
                let divisors = divisors
                    .iter()
                    .map(|d| (d.name.clone(), unwire(d.coeffs.clone()).into_inner()))
                    .collect();
                Model::toric(name, validate_model(rays.clone(), divisors)?)
            }
            ModelJson::Table {
                k,
                rows,
                lc_halfspaces,
                certified,
                ..
            } => {
                let rows = rows
                    .iter()
                    .map(|r| TableRow {
                        label: r.label.clone(),
                        log_discrepancy: r.a.0.clone(),
                        s: r.s.0.clone(),
                        ord: unwire(r.ord.clone()),
                    })
                    .collect();
                let lc = lc_halfspaces
                    .iter()
                    .map(LinearJson::to_halfspace)
                    .collect::<Result<Vec<_>>>()?;
                Ok(Model::table(name, ValuationTable::new(*k, rows, lc, *certified)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::RejectReason;

    const MODEL_T: &str = r#"{
        "kind": "table", "name": "T", "k": 1,
        "rows": [
            {"label": "E1", "A": "1", "S": "2", "ord": ["0"]},
            {"label": "E2", "A": "1", "S": "1/2", "ord": ["1"]}
        ],
        "lc_halfspaces": [{"normal": ["-1"], "offset": "-1"}],
        "certified": false
    }"#;

    #[test]
    fn rationals_round_trip_as_strings() {
        let v = wire_vec(&[rat(-3, 4), rat(2, 1)]);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"["-3/4","2"]"#);
        let back: Vec<WireRat> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<WireRat>("0.5").is_err());
        assert!(serde_json::from_str::<WireRat>("\"0.5\"").is_err());
    }

    #[test]
    fn table_model_from_json() {
        let m = ModelJson::parse(MODEL_T).unwrap().build("fallback").unwrap();
        assert_eq!(m.name(), "T");
        let r = m.kss_domain().unwrap();
        assert_eq!(r.interval, Some((rat(1, 2), rat(1, 1))));
        let json = serde_json::to_value(KssDomainJson::of(m.name(), &r)).unwrap();
        assert_eq!(json["mu"], "1/2");
        assert_eq!(json["in_E"], true);
        assert_eq!(json["vertices"], serde_json::json!([["1/2"], ["1"]]));
    }

    #[test]
    fn toric_model_rejections() {
        let bad = r#"{"kind": "toric", "dim": 2, "rays": [[2,2],[-1,0],[0,-1]], "divisors": []}"#;
        let err = ModelJson::parse(bad).unwrap().build("bad").unwrap_err();
        assert!(matches!(err, Error::Rejected { reason: RejectReason::NonPrimitiveRay, .. }));
        let unknown = r#"{"kind": "toric", "dim": 1, "rays": [[1],[-1]], "divisors": [], "extra": 1}"#;
        assert!(matches!(ModelJson::parse(unknown), Err(Error::InvalidInput(_))));
        let wrong_len = r#"{"kind": "toric", "dim": 2, "rays": [[1],[-1]], "divisors": []}"#;
        assert!(matches!(ModelJson::parse(wrong_len).unwrap().build("x"), Err(Error::InvalidInput(_))));
    }
}
