//! Reading and writing manifold spec files.
//!
//! A spec file is a JSON object:
//!
//! ```json
//! {
//!   "name": "lps_example",
//!   "dimension": 4,
//!   "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "-1"]],
//!   "brackets": [{ "i": 1, "j": 4, "coeffs": ["a", "0", "0", "0"] }],
//!   "phi": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "0"]],
//!   "xi": ["0", "0", "0", "1"],
//!   "assume_nonzero": ["alpha", "beta", "tau"]
//! }
//! ```
//!
//! Frame indices are 1-based. `brackets` lists `[f_i, f_j] = Σ_k coeffs[k] f_k`;
//! the `(j, i)` entry is filled in by antisymmetry. Matrices may be nested
//! rows or a flat row-major list; entries are expression strings or integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{parse_expr, ScalarExpr, Sym};
use crate::frame::{FrameSpec, SpecError};
use crate::tensor::{Matrix, Tensor3, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: ")?,
            (Some(l), None) => write!(f, "line {l}: ")?,
            _ => {}
        }
        if let Some(field) = &self.field {
            write!(f, "{field}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl ParseError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            column: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixText {
    Nested(Vec<Vec<Entry>>),
    Flat(Vec<Entry>),
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct BracketText {
    i: usize,
    j: usize,
    coeffs: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecText {
    #[serde(default)]
    name: Option<String>,
    dimension: usize,
    metric: MatrixText,
    #[serde(default)]
    brackets: Vec<BracketText>,
    phi: MatrixText,
    xi: Vec<Entry>,
    #[serde(default)]
    assume_nonzero: Vec<String>,
}

#[derive(Serialize)]
struct SpecOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    dimension: usize,
    metric: Vec<Vec<String>>,
    brackets: Vec<BracketOut>,
    phi: Vec<Vec<String>>,
    xi: Vec<String>,
    assume_nonzero: Vec<String>,
}

#[derive(Serialize)]
struct BracketOut {
    i: usize,
    j: usize,
    coeffs: Vec<String>,
}

fn entry(e: &Entry, field: &str) -> Result<ScalarExpr, ParseError> {
    match e {
        Entry::Int(k) => Ok(ScalarExpr::int(*k)),
        Entry::Text(s) => parse_expr(s).map_err(|err| ParseError::field(field, format!("`{s}`: {err}"))),
    }
}

fn vector(entries: &[Entry], n: usize, field: &str) -> Result<Vec<ScalarExpr>, ParseError> {
    if entries.len() != n {
        return Err(ParseError::field(field, format!("expected {n} entries, found {}", entries.len())));
    }
    entries
        .iter()
        .enumerate()
        .map(|(k, e)| entry(e, &format!("{field}[{}]", k + 1)))
        .collect()
}

fn matrix(m: &MatrixText, n: usize, field: &str) -> Result<Matrix, ParseError> {
    let rows: Vec<Vec<ScalarExpr>> = match m {
        MatrixText::Nested(rows) => {
            if rows.len() != n {
                return Err(ParseError::field(field, format!("expected {n} rows, found {}", rows.len())));
            }
            rows.iter()
                .enumerate()
                .map(|(i, r)| vector(r, n, &format!("{field}[{}]", i + 1)))
                .collect::<Result<_, _>>()?
        }
        MatrixText::Flat(flat) => {
            let all = vector(flat, n * n, field)?;
            all.chunks(n).map(|c| c.to_vec()).collect()
        }
    };
    Ok(Matrix::from_rows(rows).expect("rows checked square"))
}

/// Parses spec text without running the validation checks.
pub fn parse_spec_str(text: &str) -> Result<FrameSpec, LoadError> {
    let raw: SpecText = serde_json::from_str(text).map_err(|e| ParseError {
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string(),
    })?;
    let n = raw.dimension;
    if n < 2 {
        return Err(ParseError::field("dimension", format!("must be at least 2, found {n}")).into());
    }
    let metric = matrix(&raw.metric, n, "metric")?;
    let phi = matrix(&raw.phi, n, "phi")?;
    let xi = VectorField(vector(&raw.xi, n, "xi")?);

    let mut structure = Tensor3::zeros(n);
    let mut seen = BTreeMap::new();
    for (b, br) in raw.brackets.iter().enumerate() {
        let field = format!("brackets[{}]", b + 1);
        if br.i == 0 || br.j == 0 || br.i > n || br.j > n {
            return Err(ParseError::field(&field, format!("index out of range 1..{n}: ({}, {})", br.i, br.j)).into());
        }
        let coeffs = vector(&br.coeffs, n, &format!("{field}.coeffs"))?;
        if br.i == br.j {
            if coeffs.iter().any(|c| !c.is_zero()) {
                return Err(ParseError::field(&field, "[f_i, f_i] must vanish").into());
            }
            continue;
        }
        let key = (br.i.min(br.j), br.i.max(br.j));
        if let Some(prev) = seen.insert(key, b + 1) {
            return Err(ParseError::field(&field, format!("duplicates brackets[{prev}] for the pair {key:?}")).into());
        }
        let (i, j) = (br.i - 1, br.j - 1);
        for (k, c) in coeffs.into_iter().enumerate() {
            structure.set(k, j, i, -c.clone());
            structure.set(k, i, j, c);
        }
    }

    let mut assume = BTreeSet::new();
    for (k, s) in raw.assume_nonzero.iter().enumerate() {
        let e = parse_expr(s)
            .map_err(|err| ParseError::field(format!("assume_nonzero[{}]", k + 1), err.to_string()))?;
        let sym = e.symbols().into_iter().next();
        match sym {
            Some(sym) if e == ScalarExpr::from_sym(sym.clone()) => {
                assume.insert(sym);
            }
            _ => {
                return Err(ParseError::field(format!("assume_nonzero[{}]", k + 1), format!("`{s}` is not a symbol")).into())
            }
        }
    }

    let spec = FrameSpec::new(metric, structure, phi, xi, assume)?;
    Ok(match raw.name {
        Some(name) => spec.with_name(name),
        None => spec,
    })
}

/// Parses and validates; fails with the first failing check.
pub fn parse_spec(path: &Path) -> Result<FrameSpec, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let spec = parse_spec_str(&text)?;
    spec.validated()?;
    Ok(spec)
}

/// Pretty JSON text that parses back to an equal spec.
pub fn print_spec(spec: &FrameSpec) -> String {
    let n = spec.dim();
    let strings = |m: &Matrix| -> Vec<Vec<String>> {
        m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    };
    let c = spec.structure();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let coeffs: Vec<ScalarExpr> = (0..n).map(|k| c.get(k, i, j).clone()).collect();
            if coeffs.iter().any(|x| !x.is_zero()) {
                brackets.push(BracketOut {
                    i: i + 1,
                    j: j + 1,
                    coeffs: coeffs.iter().map(ToString::to_string).collect(),
                });
            }
        }
    }
    let out = SpecOut {
        name: spec.name().map(str::to_string),
        dimension: n,
        metric: strings(spec.metric()),
        brackets,
        phi: strings(spec.phi()),
        xi: spec.xi().0.iter().map(ToString::to_string).collect(),
        assume_nonzero: spec.assume_nonzero().iter().map(Sym::to_string).collect(),
    };
    let mut s = serde_json::to_string_pretty(&out).expect("spec serializes");
    s.push('\n');
    s
}
