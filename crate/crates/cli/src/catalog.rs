use std::fs;
use std::path::{Path, PathBuf};

use isodual::{DistanceReport, IsoDualCertificate, LinearCode};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use crate::output::canonical_json;
use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// SHA-256 of the canonical code JSON.
    pub id: String,
    pub code: LinearCode,
    pub certificate: IsoDualCertificate,
    pub distance: DistanceReport,
    pub created_at: String,
    pub updated_at: String,
}

pub fn code_id(code: &LinearCode) -> Result<String, CliError> {
    Ok(hex::encode(Sha256::digest(
        canonical_json(code)?.as_bytes(),
    )))
}

fn now() -> String {
    OffsetDateTime::now_utc()
        .format(&Rfc3339)
        .unwrap_or_default()
}

pub fn entry_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.json"))
}

pub fn load(dir: &Path, id: &str) -> Result<Option<CatalogEntry>, CliError> {
    let path = entry_path(dir, id);
    if !path.exists() {
        return Ok(None);
    }
    Ok(Some(serde_json::from_str(&fs::read_to_string(path)?)?))
}

/// Writes or refreshes `<dir>/<id>.json`, keeping the original creation time.
pub fn record(
    dir: &Path,
    code: &LinearCode,
    certificate: IsoDualCertificate,
    distance: DistanceReport,
) -> Result<CatalogEntry, CliError> {
    fs::create_dir_all(dir)?;
    let id = code_id(code)?;
    let stamp = now();
    let created_at = load(dir, &id)?
        .map(|e| e.created_at)
        .unwrap_or_else(|| stamp.clone());
    let entry = CatalogEntry {
        id: id.clone(),
        code: code.clone(),
        certificate,
        distance,
        created_at,
        updated_at: stamp,
    };
    fs::write(entry_path(dir, &id), canonical_json(&entry)?)?;
    Ok(entry)
}
