//! Append-only JSONL store of command results, keyed by a canonical hash of
//! the instance (edge list, operation and parameters). Re-running an
//! identical command appends a record with an identical payload, which is
//! what the determinism audit checks.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

pub const STORE_ENV: &str = "CHILA_STORE";
pub const DEFAULT_STORE: &str = "chila-results.jsonl";

pub struct ResultsStore {
    path: Option<PathBuf>,
}

#[derive(Serialize)]
struct Record<'a> {
    key: String,
    command: &'a str,
    params: &'a Value,
    payload: &'a Value,
}

impl ResultsStore {
    pub fn from_env(no_store: bool) -> Self {
        let path = (!no_store).then(|| {
            std::env::var_os(STORE_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_STORE))
        });
        ResultsStore { path }
    }

    /// Appends one record; the key hashes `command`, the extra key material
    /// and the parameter JSON. Store trouble must not eat the result, so the
    /// caller only gets a warning channel via the return value.
    pub fn append(
        &self,
        command: &str,
        key_material: &[&str],
        params: &Value,
        payload: &Value,
    ) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let params_text = params.to_string();
        let mut parts: Vec<&str> = vec![command, &params_text];
        parts.extend_from_slice(key_material);
        let record = Record {
            key: instance_key(&parts),
            command,
            params,
            payload,
        };
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(
            file,
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        )
    }
}

/// FNV-1a over the canonical parts, with a separator byte between parts.
pub fn instance_key(parts: &[&str]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    let mut eat = |byte: u8| {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x100000001b3);
    };
    for part in parts {
        for byte in part.bytes() {
            eat(byte);
        }
        eat(0x1f);
    }
    format!("{hash:016x}")
}
