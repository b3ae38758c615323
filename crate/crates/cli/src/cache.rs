//! On-disk cache of weight diagrams and fusion tables. One JSON document per
//! entry, named by the SHA-256 of its canonical key. Integers are stored as
//! decimal strings so payloads never lose precision.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fusionkit::fusion::{Backend, FusionTable, Level};
use fusionkit::{CartanType, Weight, WeightDiagram};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const ENV_VAR: &str = "FUSIONKIT_CACHE";
pub const DEFAULT_DIR: &str = ".fusionkit-cache";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayloadKind {
    WeightDiagram,
    FusionTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub cartan_type: String,
    pub payload_kind: PayloadKind,
    pub key: String,
    pub payload: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct DiagramPayload {
    highest: Vec<String>,
    weights: Vec<(Vec<String>, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TablePayload {
    level: String,
    backend: String,
    alcove: Vec<Vec<String>>,
    entries: Vec<([Vec<String>; 3], String)>,
}

fn encode(w: &Weight) -> Vec<String> {
    w.coords().iter().map(i64::to_string).collect()
}

fn decode(v: &[String]) -> Option<Weight> {
    v.iter().map(|s| s.parse().ok()).collect::<Option<Vec<i64>>>().map(Weight::new)
}

pub fn diagram_key(t: CartanType, lambda: &Weight) -> String {
    format!("weight_diagram/{t}/{lambda}")
}

pub fn table_key(t: CartanType, k: Level, backend: Backend) -> String {
    format!("fusion_table/{t}/{k}/{backend}")
}

pub fn diagram_entry(t: CartanType, d: &WeightDiagram) -> CacheEntry {
    let payload = DiagramPayload {
        highest: encode(d.highest()),
        weights: d.table().iter().map(|(w, m)| (encode(w), m.to_string())).collect(),
    };
    CacheEntry {
        schema_version: SCHEMA_VERSION,
        cartan_type: t.to_string(),
        payload_kind: PayloadKind::WeightDiagram,
        key: diagram_key(t, d.highest()),
        payload: serde_json::to_value(payload).expect("plain data serializes"),
    }
}

pub fn table_entry(table: &FusionTable, backend: Backend) -> CacheEntry {
    let payload = TablePayload {
        level: table.level.to_string(),
        backend: backend.to_string(),
        alcove: table.alcove.iter().map(encode).collect(),
        entries: table
            .coeffs
            .iter()
            .map(|((l, m, n), c)| ([encode(l), encode(m), encode(n)], c.to_string()))
            .collect(),
    };
    CacheEntry {
        schema_version: SCHEMA_VERSION,
        cartan_type: table.cartan_type.to_string(),
        payload_kind: PayloadKind::FusionTable,
        key: table_key(table.cartan_type, table.level, backend),
        payload: serde_json::to_value(payload).expect("plain data serializes"),
    }
}

pub fn diagram_from_entry(e: &CacheEntry) -> Option<WeightDiagram> {
    if e.payload_kind != PayloadKind::WeightDiagram {
        return None;
    }
    let p: DiagramPayload = serde_json::from_value(e.payload.clone()).ok()?;
    let table = p
        .weights
        .iter()
        .map(|(w, m)| Some((decode(w)?, m.parse().ok()?)))
        .collect::<Option<BTreeMap<Weight, u64>>>()?;
    Some(WeightDiagram::from_parts(decode(&p.highest)?, table))
}

pub fn table_from_entry(e: &CacheEntry) -> Option<FusionTable> {
    if e.payload_kind != PayloadKind::FusionTable {
        return None;
    }
    let p: TablePayload = serde_json::from_value(e.payload.clone()).ok()?;
    let coeffs = p
        .entries
        .iter()
        .map(|([l, m, n], c)| Some(((decode(l)?, decode(m)?, decode(n)?), c.parse().ok()?)))
        .collect::<Option<BTreeMap<_, u64>>>()?;
    Some(FusionTable {
        cartan_type: e.cartan_type.parse().ok()?,
        level: Level::new(p.level.parse().ok()?).ok()?,
        alcove: p.alcove.iter().map(|w| decode(w)).collect::<Option<Vec<_>>>()?,
        coeffs,
    })
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `--cache-dir`, else `$FUSIONKIT_CACHE`, else `./.fusionkit-cache`.
    pub fn locate(flag: Option<&Path>) -> Self {
        let dir = match flag {
            Some(p) => p.to_path_buf(),
            None => std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR)),
        };
        Cache { dir }
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
    }

    /// Reads an entry; missing, unreadable, mismatched or stale files are
    /// treated as misses.
    pub fn load(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.schema_version == SCHEMA_VERSION && entry.key == key).then_some(entry)
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// into place so readers never observe a partial document.
    pub fn store(&self, entry: &CacheEntry) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path_for(&entry.key);
        let tmp = self.dir.join(format!(
            ".{}.{}.tmp",
            target.file_name().and_then(|s| s.to_str()).unwrap_or("entry"),
            std::process::id()
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer_pretty(&mut f, entry)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.path_for(key).is_file()
    }
}
