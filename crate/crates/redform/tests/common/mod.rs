#![allow(dead_code)]

use std::path::PathBuf;

use redform::diffsys::DiffSystem;
use redform::doc::{parse_matrix, SystemDocument};
use redform::field::{parse_ratfunc, Matrix, RatFunc};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

pub fn load(name: &str) -> DiffSystem {
    let s = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    SystemDocument::from_json(&s).unwrap().to_system().unwrap()
}

pub fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s, "x", &[]).unwrap()
}

pub fn mat(rows: &[&[&str]]) -> Matrix<RatFunc> {
    let owned: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
    parse_matrix(&owned, "x", &[]).unwrap()
}
