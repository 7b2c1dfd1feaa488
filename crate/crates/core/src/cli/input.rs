//! Input files: a `format: 1` header, then one `key: <json>` per line.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::binomial_ideal::{Binomial, BinomialSystem, DeformationTerm};
use crate::exact_linalg::IntMatrix;
use crate::fan_geometry::RawFan;
use crate::field::CoefficientField;
use crate::zr_space::Preorder;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub source: String,
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl InputError {
    pub fn new(source: &str, message: impl Into<String>) -> Self {
        InputError { source: source.to_string(), line: None, field: None, message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        if let Some(l) = self.line {
            write!(f, ", line {l}")?;
        }
        if let Some(k) = &self.field {
            write!(f, ", field `{k}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

/// The `key: value` pairs of one file with their line numbers.
#[derive(Debug)]
pub struct FieldFile {
    source: String,
    fields: BTreeMap<String, (usize, Value)>,
    used: BTreeSet<String>,
}

impl FieldFile {
    pub fn read(path: &Path) -> Result<Self, InputError> {
        let source = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| InputError::new(&source, e.to_string()))?;
        Self::parse(&source, &text)
    }

    pub fn parse(source: &str, text: &str) -> Result<Self, InputError> {
        let err = |line: usize, field: Option<&str>, message: String| InputError {
            source: source.to_string(),
            line: Some(line),
            field: field.map(String::from),
            message,
        };
        let mut fields = BTreeMap::new();
        let mut seen_header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once(':').ok_or_else(|| err(line, None, "expected `key: <json>`".into()))?;
            let key = key.trim();
            let value: Value =
                serde_json::from_str(value.trim()).map_err(|e| err(line, Some(key), format!("invalid JSON: {e}")))?;
            if !seen_header {
                if key != "format" {
                    return Err(err(line, Some(key), "the first entry must be `format: 1`".into()));
                }
                if value.as_u64() != Some(FORMAT_VERSION) {
                    return Err(err(line, Some(key), format!("unsupported format {value}, expected {FORMAT_VERSION}")));
                }
                seen_header = true;
                continue;
            }
            if fields.insert(key.to_string(), (line, value)).is_some() {
                return Err(err(line, Some(key), "duplicate field".into()));
            }
        }
        if !seen_header {
            return Err(InputError::new(source, "missing `format: 1` header"));
        }
        Ok(FieldFile { source: source.to_string(), fields, used: BTreeSet::new() })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn error(&self, field: &str, message: impl Into<String>) -> InputError {
        InputError {
            source: self.source.clone(),
            line: self.fields.get(field).map(|(l, _)| *l),
            field: Some(field.to_string()),
            message: message.into(),
        }
    }

    pub fn optional<T: DeserializeOwned>(&mut self, field: &str) -> Result<Option<T>, InputError> {
        let Some((_, v)) = self.fields.get(field) else { return Ok(None) };
        let parsed = T::deserialize(v).map_err(|e| self.error(field, e.to_string()))?;
        self.used.insert(field.to_string());
        Ok(Some(parsed))
    }

    pub fn required<T: DeserializeOwned>(&mut self, field: &str) -> Result<T, InputError> {
        self.optional(field)?.ok_or_else(|| InputError {
            source: self.source.clone(),
            line: None,
            field: Some(field.to_string()),
            message: "missing required field".into(),
        })
    }

    /// Rejects fields that no reader asked for.
    pub fn finish(self) -> Result<(), InputError> {
        match self.fields.keys().find(|k| !self.used.contains(*k)) {
            Some(k) => Err(self.error(k, "unknown field")),
            None => Ok(()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBinomial {
    m: Vec<u64>,
    n: Vec<u64>,
    lambda: i64,
}

/// A binomial system and, optionally, the semigroup generators `γ_i` as the
/// rows of an `N × r` matrix.
#[derive(Debug, Clone)]
pub struct SystemFile {
    pub system: BinomialSystem,
    pub gamma: Option<IntMatrix>,
}

pub fn read_system(path: &Path, characteristic_override: Option<u64>) -> Result<SystemFile, InputError> {
    let mut f = FieldFile::read(path)?;
    let variables: Vec<String> = f.required("variables")?;
    let weights: Vec<u64> = f.required("weights")?;
    let file_char: Option<u64> = f.optional("characteristic")?;
    let characteristic = characteristic_override.or(file_char).ok_or_else(|| f.error("characteristic", "missing; give it in the file or with --char"))?;
    let field = CoefficientField::new(characteristic).map_err(|e| f.error("characteristic", e.to_string()))?;
    let raw: Vec<RawBinomial> = f.required("binomials")?;
    let binomials = raw
        .into_iter()
        .map(|b| Binomial::new(b.m, b.n, b.lambda))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| f.error("binomials", e.to_string()))?;
    let deformations: Vec<Vec<DeformationTerm>> =
        f.optional("deformations")?.unwrap_or_else(|| vec![Vec::new(); binomials.len()]);
    let gamma: Option<Vec<Vec<i64>>> = f.optional("gamma")?;
    let gamma = match gamma {
        None => None,
        Some(rows) => Some(IntMatrix::from_i64_rows(&rows).map_err(|e| f.error("gamma", e.to_string()))?),
    };
    let system =
        BinomialSystem::new(variables, weights, field, binomials, deformations).map_err(|e| InputError::new(f.source(), e.to_string()))?;
    f.finish()?;
    Ok(SystemFile { system, gamma })
}

pub fn read_fan(path: &Path) -> Result<RawFan, InputError> {
    let mut f = FieldFile::read(path)?;
    let rays: Vec<Vec<i64>> = f.required("rays")?;
    let cones: Vec<Vec<usize>> = f.required("cones")?;
    let ambient_rank: Option<usize> = f.optional("rank")?;
    if let Some(i) = rays.iter().position(|v| Some(v.len()) != ambient_rank.or(rays.first().map(Vec::len))) {
        return Err(f.error("rays", format!("ray {i} has the wrong length")));
    }
    f.finish()?;
    Ok(RawFan { rays, cones, ambient_rank })
}

pub fn read_preorder(path: &Path) -> Result<Preorder, InputError> {
    let mut f = FieldFile::read(path)?;
    let rows: Vec<Vec<i64>> = f.required("rows")?;
    let rank: Option<usize> = f.optional("rank")?;
    let rank = rank.or(rows.first().map(Vec::len)).ok_or_else(|| f.error("rows", "no rows; give `rank` for the trivial preorder"))?;
    let w = Preorder::new(rank, rows).map_err(|e| f.error("rows", e.to_string()))?;
    f.finish()?;
    Ok(w)
}

/// Text of a fan file for `fan`, readable by [`read_fan`].
pub fn write_fan(fan: &RawFan) -> String {
    let mut s = format!("format: {FORMAT_VERSION}\n");
    s.push_str(&format!("rays: {}\n", serde_json::to_string(&fan.rays).expect("plain data")));
    s.push_str(&format!("cones: {}\n", serde_json::to_string(&fan.cones).expect("plain data")));
    s
}
