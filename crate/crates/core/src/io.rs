//! JSON file formats for semigroups, functions, representations and reports.
//!
//! Semigroup: `{"name": str?, "elements": [str]?, "table": [[int]], "star": [int]?}`
//! with `table[i][j]` the index of `x_i x_j`.
//!
//! Function: `{"semigroup": str, "values": [[re, im], ...]}`, or plain
//! `[re, ...]` values for real functions.
//!
//! Representation: `{"semigroup": str, "dim": int, "matrices": [[[[re, im]]]]}`
//! with one row-major `dim x dim` matrix per element.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, SemigroupError};
use crate::function::SFunction;
use crate::linalg::CMatrix;
use crate::representation::Representation;
use crate::semigroup::{validate_table, InverseSemigroup};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Content(#[from] Error),
}

impl FileError {
    /// Whether the file was readable and well-formed but described a table
    /// that breaks an algebraic law.
    pub fn is_validation_failure(&self) -> bool {
        match self {
            FileError::Semigroup(e) => !e.is_malformed(),
            _ => false,
        }
    }
}

pub fn read_to_string(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_string(path: &Path, contents: &str) -> Result<(), FileError> {
    fs::write(path, contents).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<usize>>,
}

impl SemigroupFile {
    pub fn from_semigroup(s: &InverseSemigroup) -> Self {
        Self {
            name: s.name().map(str::to_string),
            elements: s.labels().map(<[String]>::to_vec),
            table: s.table_rows(),
            star: Some(s.star_map().to_vec()),
        }
    }

    pub fn into_semigroup(self) -> Result<InverseSemigroup, SemigroupError> {
        let mut s = validate_table(&self.table, self.star.as_deref())?;
        if let Some(labels) = self.elements {
            s = s.with_labels(labels)?;
        }
        if let Some(name) = self.name {
            s = s.with_name(name);
        }
        Ok(s)
    }
}

pub fn parse_semigroup(json: &str) -> Result<InverseSemigroup, FileError> {
    let file: SemigroupFile = serde_json::from_str(json)?;
    Ok(file.into_semigroup()?)
}

/// Canonical JSON for a semigroup, one table row per line.
pub fn semigroup_to_json(s: &InverseSemigroup) -> String {
    let file = SemigroupFile::from_semigroup(s);
    let mut fields = Vec::new();
    if let Some(name) = &file.name {
        fields.push(format!("  \"name\": {}", compact(name)));
    }
    if let Some(elements) = &file.elements {
        fields.push(format!("  \"elements\": {}", compact(elements)));
    }
    let rows: Vec<String> = file
        .table
        .iter()
        .map(|row| format!("    {}", compact(row)))
        .collect();
    fields.push(format!("  \"table\": [\n{}\n  ]", rows.join(",\n")));
    if let Some(star) = &file.star {
        fields.push(format!("  \"star\": {}", compact(star)));
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn read_semigroup(path: &Path) -> Result<InverseSemigroup, FileError> {
    let s = parse_semigroup(&read_to_string(path)?)?;
    if s.name().is_some() {
        return Ok(s);
    }
    // unnamed tables are known by their file stem
    Ok(match path.file_stem().and_then(|stem| stem.to_str()) {
        Some(stem) => s.with_name(stem),
        None => s,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionValues {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    #[serde(default)]
    pub semigroup: String,
    pub values: FunctionValues,
}

fn check_name(declared: &str, base: &InverseSemigroup) -> Result<(), Error> {
    match base.name() {
        Some(name) if !declared.is_empty() && declared != name => Err(Error::BaseMismatch),
        _ => Ok(()),
    }
}

/// Parses a function file against `base`. A non-empty `semigroup` name must
/// match the base's name and the value count must match its size.
pub fn parse_function(json: &str, base: &Arc<InverseSemigroup>) -> Result<SFunction, FileError> {
    let file: FunctionFile = serde_json::from_str(json)?;
    check_name(&file.semigroup, base)?;
    let values = match file.values {
        FunctionValues::Real(v) => v.into_iter().map(|re| Complex64::new(re, 0.0)).collect(),
        FunctionValues::Complex(v) => v,
    };
    if values.len() != base.len() {
        return Err(Error::BaseMismatch.into());
    }
    Ok(SFunction::new(base, values)?)
}

/// Function file JSON; real functions use the plain `[re, ...]` form.
pub fn function_to_json(f: &SFunction) -> String {
    let values = if f.values().iter().all(|v| v.im == 0.0) {
        FunctionValues::Real(f.values().iter().map(|v| v.re).collect())
    } else {
        FunctionValues::Complex(f.values().to_vec())
    };
    let semigroup = f.base().name().unwrap_or_default();
    format!(
        "{{\n  \"semigroup\": {},\n  \"values\": {}\n}}\n",
        compact(semigroup),
        compact(&values)
    )
}

pub fn read_function(path: &Path, base: &Arc<InverseSemigroup>) -> Result<SFunction, FileError> {
    parse_function(&read_to_string(path)?, base)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    #[serde(default)]
    pub semigroup: String,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<Complex64>>>,
}

pub fn parse_representation(
    json: &str,
    base: &Arc<InverseSemigroup>,
) -> Result<Representation, FileError> {
    let file: RepresentationFile = serde_json::from_str(json)?;
    check_name(&file.semigroup, base)?;
    let dim = file.dim;
    let mut matrices = Vec::with_capacity(file.matrices.len());
    for rows in file.matrices {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            let got = rows
                .iter()
                .map(Vec::len)
                .find(|&l| l != dim)
                .unwrap_or(rows.len());
            return Err(Error::DimensionMismatch { expected: dim, got }.into());
        }
        matrices.push(CMatrix::from_fn(dim, dim, |i, j| rows[i][j]));
    }
    Ok(Representation::new(base, dim, matrices)?)
}

pub fn representation_to_json(pi: &Representation) -> String {
    let dim = pi.dim();
    let file = RepresentationFile {
        semigroup: pi.base().name().unwrap_or_default().to_string(),
        dim,
        matrices: pi
            .matrices()
            .iter()
            .map(|m| {
                (0..dim)
                    .map(|i| (0..dim).map(|j| m[(i, j)]).collect())
                    .collect()
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("representation file serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::lambda_r;
    use crate::semigroup::{cyclic_group, symmetric_inverse_monoid};

    #[test]
    fn parses_minimal_and_full_semigroup_files() {
        let s = parse_semigroup(r#"{"table": [[0, 1], [1, 0]]}"#).unwrap();
        assert_eq!(s.star_map(), &[0, 1]);
        assert_eq!(s.name(), None);

        let s = parse_semigroup(
            r#"{"name": "c2", "elements": ["one", "zero"], "table": [[0,1],[1,1]], "star": [0,1]}"#,
        )
        .unwrap();
        assert_eq!(s.name(), Some("c2"));
        assert_eq!(s.label(1), "zero");
        assert_eq!(s.zero(), Some(1));
    }

    #[test]
    fn rejects_malformed_semigroup_files() {
        let ragged = parse_semigroup(r#"{"table": [[0, 1], [1]]}"#).unwrap_err();
        assert!(matches!(
            ragged,
            FileError::Semigroup(SemigroupError::Ragged { .. })
        ));
        assert!(!ragged.is_validation_failure());
        let range = parse_semigroup(r#"{"table": [[0, 5], [1, 0]]}"#).unwrap_err();
        assert!(matches!(
            range,
            FileError::Semigroup(SemigroupError::IndexOutOfRange { .. })
        ));
        assert!(matches!(parse_semigroup("{"), Err(FileError::Json(_))));
        assert!(matches!(
            parse_semigroup(r#"{"table": [[0,1],[1,0]], "extra": 1}"#),
            Err(FileError::Json(_))
        ));
        let law = parse_semigroup(r#"{"table": [[0, 0], [0, 0]]}"#).unwrap_err();
        assert!(law.is_validation_failure());
        assert!(parse_semigroup(r#"{"table": [[0,1],[1,0]], "elements": ["a"]}"#).is_err());
    }

    #[test]
    fn semigroup_json_roundtrip() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        let back = parse_semigroup(&semigroup_to_json(&i2)).unwrap();
        assert_eq!(back, i2);
    }

    #[test]
    fn function_files() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let f = parse_function(r#"{"semigroup": "Z2", "values": [1.5, -2]}"#, &z2).unwrap();
        assert_eq!(
            f.values(),
            &[Complex64::new(1.5, 0.0), Complex64::new(-2.0, 0.0)]
        );
        let g = parse_function(r#"{"semigroup": "", "values": [[1, 2], [3, -4]]}"#, &z2).unwrap();
        assert_eq!(g.get(1), Complex64::new(3.0, -4.0));
        assert_eq!(parse_function(&function_to_json(&g), &z2).unwrap(), g);
        assert!(function_to_json(&f).contains("1.5"));

        let short = parse_function(r#"{"semigroup": "Z2", "values": [1]}"#, &z2).unwrap_err();
        assert!(matches!(short, FileError::Content(Error::BaseMismatch)));
        let named = parse_function(r#"{"semigroup": "Z3", "values": [1, 2]}"#, &z2).unwrap_err();
        assert!(matches!(named, FileError::Content(Error::BaseMismatch)));
    }

    #[test]
    fn representation_files() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let lam = lambda_r(&z2);
        let json = representation_to_json(&lam);
        assert_eq!(parse_representation(&json, &z2).unwrap(), lam);

        let bad = r#"{"semigroup": "Z2", "dim": 2, "matrices": [[[[1,0]]], [[[1,0]]]]}"#;
        assert!(matches!(
            parse_representation(bad, &z2),
            Err(FileError::Content(Error::DimensionMismatch { .. }))
        ));
        let one = r#"{"semigroup": "Z2", "dim": 1, "matrices": [[[[1,0]]], [[[-1,0]]]]}"#;
        let sign = parse_representation(one, &z2).unwrap();
        assert!(crate::representation::is_star_representation(&sign).verdict);
    }
}
