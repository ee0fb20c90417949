//! The formula database file: one JSON document
//!
//! ```text
//! { "version": 1, "checksum": "<sha256 hex>", "records": [ … ] }
//! ```
//!
//! The checksum is SHA-256 over the compact JSON of the `records` value with
//! object keys in sorted order. Writes go to a sibling temporary file that is
//! then renamed over the target, so readers never observe a partial file.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use partitions_core::store::{FormulaDatabase, FORMAT_VERSION};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::json::RecordJson;

#[derive(Debug)]
pub enum DbError {
    Io { path: PathBuf, source: io::Error },
    /// Not valid JSON, truncated, or missing required fields.
    Parse(String),
    Version { found: u64 },
    Checksum { stored: String, computed: String },
    /// Well-formed and checksummed, but the content is not a valid database.
    Invalid(String),
}

impl DbError {
    pub fn is_integrity(&self) -> bool {
        matches!(self, DbError::Checksum { .. } | DbError::Invalid(_))
    }
}

impl fmt::Display for DbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DbError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            DbError::Parse(m) => write!(f, "database parse error: {m}"),
            DbError::Version { found } => {
                write!(f, "database format version {found} is not supported (expected {FORMAT_VERSION})")
            }
            DbError::Checksum { stored, computed } => {
                write!(f, "database checksum mismatch: file says {stored}, content hashes to {computed}")
            }
            DbError::Invalid(m) => write!(f, "invalid database content: {m}"),
        }
    }
}

impl std::error::Error for DbError {}

#[derive(Serialize)]
struct Document<'a> {
    version: u32,
    checksum: String,
    records: &'a [RecordJson],
}

fn checksum(records: &Value) -> String {
    let canonical = serde_json::to_string(records).expect("JSON values always serialize");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn to_json_string(db: &FormulaDatabase) -> String {
    let records: Vec<RecordJson> = db.records().iter().map(RecordJson::from_record).collect();
    let value = serde_json::to_value(&records).expect("records always serialize");
    let doc = Document { version: db.version, checksum: checksum(&value), records: &records };
    let mut text = serde_json::to_string_pretty(&doc).expect("records always serialize");
    text.push('\n');
    text
}

pub fn from_json_str(text: &str) -> Result<FormulaDatabase, DbError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| DbError::Parse(e.to_string()))?;
    let field = |name: &str| doc.get(name).ok_or_else(|| DbError::Parse(format!("missing field `{name}`")));
    let version = field("version")?.as_u64().ok_or_else(|| DbError::Parse("`version` is not an integer".into()))?;
    if version != u64::from(FORMAT_VERSION) {
        return Err(DbError::Version { found: version });
    }
    let stored = field("checksum")?
        .as_str()
        .ok_or_else(|| DbError::Parse("`checksum` is not a string".into()))?
        .to_owned();
    let records = field("records")?;
    let computed = checksum(records);
    if stored != computed {
        return Err(DbError::Checksum { stored, computed });
    }
    let records: Vec<RecordJson> =
        serde_json::from_value(records.clone()).map_err(|e| DbError::Parse(e.to_string()))?;
    let records = records
        .iter()
        .map(|r| r.to_record().map_err(DbError::Invalid))
        .collect::<Result<Vec<_>, _>>()?;
    FormulaDatabase::from_records(FORMAT_VERSION, records).map_err(|e| DbError::Invalid(e.to_string()))
}

pub fn load_database(path: &Path) -> Result<FormulaDatabase, DbError> {
    let text = fs::read_to_string(path).map_err(|source| DbError::Io { path: path.into(), source })?;
    from_json_str(&text)
}

/// Atomically replaces `path` with the serialized database.
pub fn save_database(db: &FormulaDatabase, path: &Path) -> Result<(), DbError> {
    let io_err = |source| DbError::Io { path: path.into(), source };
    let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_else(|| "formulas".into());
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    let mut f = fs::File::create(&tmp).map_err(io_err)?;
    f.write_all(to_json_string(db).as_bytes()).map_err(io_err)?;
    f.sync_all().map_err(io_err)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err)
}
