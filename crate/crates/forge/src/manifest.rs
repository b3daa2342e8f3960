//! Result manifests: `{version, entries: [{id, expected, provenance}]}`.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checks;
use crate::ForgeError;

pub const DEFAULT_MANIFEST: &str = include_str!("../manifest/default.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub expected: String,
    /// `computed`, or `anchored` when the value rests on a supplied fact.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, ForgeError> {
        let m: Manifest = serde_json::from_str(text)?;
        if m.version != 1 {
            return Err(ForgeError::Manifest(format!("unsupported version {}", m.version)));
        }
        for (i, e) in m.entries.iter().enumerate() {
            if !checks::IDS.contains(&e.id.as_str()) {
                return Err(ForgeError::UnknownId(e.id.clone()));
            }
            if m.entries[..i].iter().any(|p| p.id == e.id) {
                return Err(ForgeError::Manifest(format!("duplicate id {:?}", e.id)));
            }
        }
        Ok(m)
    }

    pub fn builtin() -> Manifest {
        Manifest::parse(DEFAULT_MANIFEST).expect("default manifest is valid")
    }

    pub fn load(path: &Path) -> Result<Manifest, ForgeError> {
        Manifest::parse(&std::fs::read_to_string(path)?)
    }

    /// Entries named in `only`, in manifest order; all entries if `only` is empty.
    pub fn select(&self, only: &[String]) -> Result<Vec<&ManifestEntry>, ForgeError> {
        for id in only {
            if !self.entries.iter().any(|e| &e.id == id) {
                return Err(ForgeError::UnknownId(id.clone()));
            }
        }
        Ok(self.entries.iter().filter(|e| only.is_empty() || only.contains(&e.id)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: String,
    pub passed: bool,
    pub expected: String,
    pub observed: String,
    pub millis: u128,
}

pub fn run_entry(e: &ManifestEntry) -> Outcome {
    let start = Instant::now();
    let observed = match checks::observe(&e.id) {
        Ok(s) => s,
        Err(err) => format!("error: {err}"),
    };
    Outcome {
        id: e.id.clone(),
        passed: observed == e.expected,
        expected: e.expected.clone(),
        observed,
        millis: start.elapsed().as_millis(),
    }
}

pub fn reproduce(m: &Manifest, only: &[String]) -> Result<Vec<Outcome>, ForgeError> {
    Ok(m.select(only)?.into_iter().map(run_entry).collect())
}
