//! Result records: one JSON object per line, keys sorted.

use std::time::Duration;

use queencover_core::search::{OptimalSet, SearchParams};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::RecordError;

pub const SCHEMA_VERSION: u32 = 1;

/// Changes whenever search results could change for the same parameters.
pub const ENGINE_REVISION: &str = "bnb-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub wall_micros: u64,
}

impl From<Duration> for Timing {
    fn from(d: Duration) -> Self {
        Timing { wall_micros: d.as_micros().min(u64::MAX as u128) as u64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub params: SearchParams,
    pub optimal_set: OptimalSet,
    pub timing: Timing,
    pub engine_fingerprint: String,
}

/// Hex SHA-256 of the engine version and the canonical parameter encoding.
pub fn engine_fingerprint(params: &SearchParams) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(b"\0");
    h.update(ENGINE_REVISION.as_bytes());
    h.update(b"\0");
    h.update(to_sorted_json(params).as_bytes());
    hex::encode(h.finalize())
}

impl ResultRecord {
    pub fn new(set: OptimalSet, elapsed: Duration) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            params: set.params,
            engine_fingerprint: engine_fingerprint(&set.params),
            optimal_set: set,
            timing: elapsed.into(),
        }
    }

    /// One line, no trailing newline.
    pub fn serialize(&self) -> String {
        to_sorted_json(self)
    }

    pub fn deserialize(text: &str) -> Result<ResultRecord, RecordError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| RecordError::Parse {
            offset: byte_offset(text, e.line(), e.column()),
            message: e.to_string(),
        })?;
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => return Err(RecordError::UnsupportedVersion { found: v, supported: SCHEMA_VERSION }),
            None => {
                return Err(RecordError::Validation {
                    field: "schema_version".into(),
                    message: "missing or not an unsigned integer".into(),
                })
            }
        }
        let record: ResultRecord = serde_path_to_error::deserialize(value)
            .map_err(|e| RecordError::Validation { field: e.path().to_string(), message: e.inner().to_string() })?;
        record.validate()?;
        Ok(record)
    }

    pub fn validate(&self) -> Result<(), RecordError> {
        let invalid = |field: &str, message: String| RecordError::Validation { field: field.into(), message };
        if self.optimal_set.params != self.params {
            return Err(invalid("optimal_set.params", "differs from params".into()));
        }
        if self.engine_fingerprint.len() != 64 || hex::decode(&self.engine_fingerprint).is_err() {
            return Err(invalid("engine_fingerprint", "expected 64 hex digits".into()));
        }
        self.optimal_set.validate().map_err(|e| invalid("optimal_set", e.to_string()))
    }
}

/// Serialize through `serde_json::Value`, whose maps keep keys sorted.
pub fn to_sorted_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("records contain only JSON-representable data");
    value.to_string()
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let before: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (before + column.saturating_sub(1)).min(text.len())
}
