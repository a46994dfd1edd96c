//! Plain key-range grid files driving the report-only scans.
//!
//! Format: one `key = values` line per parameter; values are comma-separated
//! integers or inclusive `a..b` ranges; `#` starts a comment.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct Grid {
    entries: BTreeMap<String, Vec<i64>>,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Grid> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, vals) = line.split_once('=').ok_or_else(|| {
                Error::BadGrid(format!("line {}: expected `key = values`", lineno + 1))
            })?;
            let key = key.trim().to_string();
            let mut parsed = Vec::new();
            for tok in vals.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                if let Some((a, b)) = tok.split_once("..") {
                    let a: i64 = a.trim().parse().map_err(|_| {
                        Error::BadGrid(format!("line {}: bad range start {a:?}", lineno + 1))
                    })?;
                    let b: i64 = b.trim().parse().map_err(|_| {
                        Error::BadGrid(format!("line {}: bad range end {b:?}", lineno + 1))
                    })?;
                    if b < a {
                        return Err(Error::BadGrid(format!(
                            "line {}: empty range {a}..{b}",
                            lineno + 1
                        )));
                    }
                    parsed.extend(a..=b);
                } else {
                    let x: i64 = tok.parse().map_err(|_| {
                        Error::BadGrid(format!("line {}: bad value {tok:?}", lineno + 1))
                    })?;
                    parsed.push(x);
                }
            }
            if entries.insert(key.clone(), parsed).is_some() {
                return Err(Error::BadGrid(format!("duplicate key {key:?}")));
            }
        }
        Ok(Grid { entries })
    }

    pub fn values(&self, key: &str) -> Result<&[i64]> {
        self.entries
            .get(key)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::BadGrid(format!("missing key {key:?}")))
    }

    pub fn values_u64(&self, key: &str) -> Result<Vec<u64>> {
        self.values(key)?
            .iter()
            .map(|&x| {
                u64::try_from(x)
                    .map_err(|_| Error::BadGrid(format!("key {key:?} needs nonnegative values")))
            })
            .collect()
    }

    pub fn values_u32(&self, key: &str) -> Result<Vec<u32>> {
        self.values(key)?
            .iter()
            .map(|&x| {
                u32::try_from(x)
                    .map_err(|_| Error::BadGrid(format!("key {key:?} needs small nonnegative values")))
            })
            .collect()
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }
}
