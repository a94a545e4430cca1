//! File formats: quartics, weak combinatorics and search specs as JSON or
//! TOML (chosen by extension), and plane-pair line tables.

use std::path::Path;

use serde::de::DeserializeOwned;

use crate::algebra::rational::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::geography::WeakCombinatorics;
use crate::quartic::QuarticForm;
use crate::search::SearchSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Json,
    Toml,
}

impl FileFormat {
    /// `.toml` means TOML, anything else JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("toml") => FileFormat::Toml,
            _ => FileFormat::Json,
        }
    }
}

/// Deserialize text, reporting the line and column of JSON errors.
pub fn parse_str<T: DeserializeOwned>(text: &str, format: FileFormat) -> Result<T> {
    match format {
        FileFormat::Json => serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))),
        FileFormat::Toml => toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string())),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    parse_str(&text, FileFormat::from_path(path)).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn read_quartic(path: &Path) -> Result<QuarticForm> {
    let q: QuarticForm = read(path)?;
    q.validate()?;
    Ok(q)
}

pub fn read_combinatorics(path: &Path) -> Result<WeakCombinatorics> {
    read(path)
}

pub fn read_search_spec(path: &Path) -> Result<SearchSpec> {
    read(path)
}

pub type PlanePair = ([Rational; 4], [Rational; 4]);

/// Rows of eight rationals `h0 h1 h2 h3 h~0 h~1 h~2 h~3`, separated by spaces,
/// commas, `&` or `|`. Blank lines and `#` comments are skipped; a trailing
/// `\\` is ignored.
pub fn parse_plane_table(text: &str) -> Result<Vec<PlanePair>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim().trim_end_matches("\\\\").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> =
            line.split(|c: char| c.is_whitespace() || matches!(c, ',' | '&' | '|')).filter(|s| !s.is_empty()).collect();
        if fields.len() != 8 {
            return Err(Error::Parse(format!("row at line {lineno}: expected 8 rationals, found {}", fields.len())));
        }
        let mut vals = Vec::with_capacity(8);
        for f in fields {
            vals.push(parse_rational(f).map_err(|_| Error::Parse(format!("row at line {lineno}: bad rational '{f}'")))?);
        }
        let h: [Rational; 4] = vals[..4].to_vec().try_into().expect("4 values");
        let h2: [Rational; 4] = vals[4..].to_vec().try_into().expect("4 values");
        rows.push((h, h2));
    }
    if rows.is_empty() {
        return Err(Error::Parse("line table is empty".into()));
    }
    Ok(rows)
}

pub fn read_plane_table(path: &Path) -> Result<Vec<PlanePair>> {
    parse_plane_table(&read_text(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}
