//! Loading models and families, parsing points, and mapping errors to exit codes.

use std::fs;
use std::path::Path;

use kss_core::domains::Model;
use kss_core::wire::ModelJson;
use kss_core::{Error, QVec};
use serde::Deserialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::DimensionMismatch(_) | Error::InvalidInput(_) | Error::UnknownValuation(_) => EXIT_MALFORMED,
        Error::Rejected { .. } => EXIT_REJECTED,
        Error::Degenerate(_) | Error::Unbounded | Error::Empty | Error::Domain(_) => EXIT_DEGENERATE,
        Error::InvariantViolation { .. } => EXIT_INTERNAL,
    }
}

fn kind(err: &Error) -> &'static str {
    match err {
        Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
        Error::InvalidInput(_) => "INVALID_INPUT",
        Error::UnknownValuation(_) => "UNKNOWN_VALUATION",
        Error::Rejected { .. } => "REJECTED",
        Error::Degenerate(_) => "DEGENERATE",
        Error::Unbounded => "UNBOUNDED",
        Error::Empty => "EMPTY",
        Error::Domain(_) => "DOMAIN",
        Error::InvariantViolation { .. } => "INVARIANT_VIOLATION",
    }
}

/// Machine-readable error document written to stderr.
pub fn error_json(err: &Error) -> Value {
    let mut body = json!({
        "kind": kind(err),
        "exit_code": exit_code(err),
        "message": err.to_string(),
    });
    match err {
        Error::Rejected { reason, .. } => body["reason"] = json!(reason.code()),
        Error::InvariantViolation { witness, .. } => body["witness"] = json!(witness),
        _ => {}
    }
    json!({ "error": body })
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".to_string())
}

pub fn load_model_json(path: &Path) -> Result<ModelJson, Error> {
    ModelJson::parse(&read(path)?)
}

pub fn load_model(path: &Path) -> Result<Model, Error> {
    load_model_json(path)?.build(&stem(path))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    models: Vec<Value>,
}

/// Loads `{"models": [...]}` where entries are paths (relative to the family
/// file) or inline model objects.
pub fn load_family(path: &Path) -> Result<Vec<Model>, Error> {
    let family: FamilyJson =
        serde_json::from_str(&read(path)?).map_err(|e| Error::InvalidInput(format!("malformed family: {e}")))?;
    let base = path.parent().unwrap_or(Path::new("."));
    family
        .models
        .into_iter()
        .enumerate()
        .map(|(i, entry)| match entry {
            Value::String(rel) => load_model(&base.join(rel)),
            Value::Object(_) => ModelJson::from_value(entry)?.build(&format!("model{i}")),
            other => Err(Error::InvalidInput(format!("family entry {i} is neither a path nor a model: {other}"))),
        })
        .collect()
}

/// Parses `p/q[,p/q...]`. The empty string is the point of `Q^0`.
pub fn parse_point(text: &str) -> Result<QVec, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(QVec::new(Vec::new()));
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    QVec::parse(&parts)
}

/// Parses `i=p/q[,i=p/q...]` with 1-based coordinate indices.
pub fn parse_slice(text: &str) -> Result<Vec<(usize, kss_core::Rat)>, Error> {
    text.split(',')
        .map(|part| {
            let (idx, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("slice entry `{part}` is not of the form i=p/q")))?;
            let idx: usize = idx
                .trim()
                .parse()
                .ok()
                .filter(|&i: &usize| i >= 1)
                .ok_or_else(|| Error::InvalidInput(format!("bad slice coordinate `{idx}`")))?;
            Ok((idx - 1, kss_core::parse_rat(value.trim())?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use kss_core::rat;

    #[test]
    fn points_and_slices() {
        assert_eq!(parse_point("1/4, 1/4").unwrap(), QVec::new(vec![rat(1, 4), rat(1, 4)]));
        assert!(parse_point("").unwrap().is_empty());
        assert!(parse_point("0.25").is_err());
        assert_eq!(parse_slice("3=1/5").unwrap(), vec![(2, rat(1, 5))]);
        assert!(parse_slice("0=1").is_err());
        assert!(parse_slice("x").is_err());
    }

    #[test]
    fn rejection_maps_to_three() {
        let err = Error::Rejected {
            reason: kss_core::RejectReason::NonPrimitiveRay,
            message: "m".into(),
        };
        assert_eq!(exit_code(&err), EXIT_REJECTED);
        assert_eq!(error_json(&err)["error"]["reason"], "NON_PRIMITIVE_RAY");
    }
}
