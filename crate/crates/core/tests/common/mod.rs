#![allow(dead_code)]

use std::path::PathBuf;

use kss_core::domains::Model;
use kss_core::wire::ModelJson;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load(name: &str) -> Model {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    ModelJson::parse(&text).expect("fixture parses").build(name).expect("fixture validates")
}

pub const MODELS: [&str; 6] = [
    "model-a.json",
    "model-b.json",
    "model-c.json",
    "model-d.json",
    "model-e.json",
    "model-t.json",
];

pub const TORIC: [&str; 8] = [
    "p1.json",
    "p2.json",
    "f1.json",
    "model-a.json",
    "model-b.json",
    "model-c.json",
    "model-d.json",
    "model-e.json",
];

pub fn all_models() -> Vec<Model> {
    MODELS.iter().map(|m| load(m)).collect()
}
