//! JSON documents describing differential systems.

use serde::{Deserialize, Serialize};

use crate::diffsys::DiffSystem;
use crate::field::{parse_ratfunc, Matrix, RatFunc};
use crate::{Error, Result};

fn default_var() -> String {
    "x".to_string()
}

/// A system `Y' = A·Y` as rational-function strings, rows first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDocument {
    #[serde(default = "default_var")]
    pub var: String,
    pub blocks: Vec<usize>,
    pub matrix: Vec<Vec<String>>,
    /// User assertion that every diagonal block is already in reduced form.
    #[serde(default)]
    pub diagonal_reduced: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    /// Optional right-hand-side columns for inhomogeneous solving.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<Vec<String>>>,
}

impl SystemDocument {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s)
            .map_err(|e| Error::Contract(format!("invalid system document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn to_matrix(&self) -> Result<Matrix<RatFunc>> {
        parse_matrix(&self.matrix, &self.var, &self.params)
    }

    pub fn to_system(&self) -> Result<DiffSystem> {
        let blocks = if self.blocks.is_empty() {
            vec![self.matrix.len()]
        } else {
            self.blocks.clone()
        };
        DiffSystem::new(self.to_matrix()?, blocks)
    }

    pub fn from_system(sys: &DiffSystem, var: &str, params: &[String]) -> Self {
        SystemDocument {
            var: var.to_string(),
            blocks: sys.partition().to_vec(),
            matrix: format_matrix(sys.matrix(), var, params),
            diagonal_reduced: false,
            params: params.to_vec(),
            rhs: None,
        }
    }

    /// Right-hand-side columns, each of length `dim`.
    pub fn rhs_columns(&self) -> Result<Vec<Vec<RatFunc>>> {
        let Some(cols) = &self.rhs else {
            return Ok(Vec::new());
        };
        let n = self.matrix.len();
        cols.iter()
            .enumerate()
            .map(|(j, c)| {
                if c.len() != n {
                    return Err(Error::Contract(format!(
                        "rhs column {} has length {}, expected {n}",
                        j + 1,
                        c.len()
                    )));
                }
                c.iter()
                    .enumerate()
                    .map(|(i, s)| parse_entry(s, &self.var, &self.params, i, j))
                    .collect()
            })
            .collect()
    }
}

fn parse_entry(s: &str, var: &str, params: &[String], i: usize, j: usize) -> Result<RatFunc> {
    parse_ratfunc(s, var, params).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos,
            msg: format!("entry ({}, {}): {msg}", i + 1, j + 1),
        },
        other => other,
    })
}

/// Parses a rectangular matrix of rational-function strings.
pub fn parse_matrix(rows: &[Vec<String>], var: &str, params: &[String]) -> Result<Matrix<RatFunc>> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    let mut out = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != m {
            return Err(Error::Contract(format!(
                "row {} has {} entries, expected {m}",
                i + 1,
                r.len()
            )));
        }
        let row: Result<Vec<RatFunc>> = r
            .iter()
            .enumerate()
            .map(|(j, s)| parse_entry(s, var, params, i, j))
            .collect();
        out.push(row?);
    }
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    Ok(Matrix::from_rows(out))
}

/// Formats a matrix as strings that [`parse_matrix`] reads back.
pub fn format_matrix(m: &Matrix<RatFunc>, var: &str, params: &[String]) -> Vec<Vec<String>> {
    let names = |i: usize| {
        params
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("t{}", i + 1))
    };
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|v| v.fmt_in(var, &names)).collect())
        .collect()
}
