//! Bundled polynomial catalog and its line format.
//!
//! One record per line: `name <TAB> polynomial <TAB> optional-expected-JSON`.
//! Blank lines and lines starting with `#` are skipped. Expected values are
//! pinned outputs used by the catalog runner as golden comparisons.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Known-invariant record attached to a catalog entry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    /// Central charge as a canonical rational string.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_dim: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub polynomial: String,
    pub expected: Option<Expected>,
}

/// The catalog shipped with the crate.
pub fn bundled() -> &'static str {
    include_str!("../data/catalog.tsv")
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let name = fields.next().unwrap_or_default().trim();
        let poly = fields.next().map(str::trim).unwrap_or_default();
        if name.is_empty() || poly.is_empty() {
            return Err(Error::Invalid(format!(
                "catalog line {}: expected `name<TAB>polynomial[<TAB>expected]`",
                lineno + 1
            )));
        }
        let expected = match fields.next().map(str::trim) {
            None | Some("") => None,
            Some(json) => Some(serde_json::from_str::<Expected>(json).map_err(|e| {
                Error::Invalid(format!("catalog line {}: bad expected JSON: {e}", lineno + 1))
            })?),
        };
        entries.push(CatalogEntry {
            name: name.to_string(),
            polynomial: poly.to_string(),
            expected,
        });
    }
    Ok(entries)
}

/// Parse the bundled catalog.
pub fn bundled_entries() -> Result<Vec<CatalogEntry>> {
    parse_catalog(bundled())
}
