//! Run manifest: a machine-readable record of what a run computed.
//!
//! The manifest is written once, by the coordinator, after all tasks
//! finish. It carries the configuration hash, component versions, the
//! status of every grid task, the status of every null-model group, and
//! a content hash of every output file so a reader can verify artifacts
//! without rerunning. It contains no timestamps or absolute paths, so
//! two runs with identical configuration and inputs produce
//! byte-identical manifests.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// File name of the manifest inside the output directory.
pub const MANIFEST_NAME: &str = "run_manifest.json";

/// Top-level manifest document.
#[derive(Debug, Serialize)]
pub struct Manifest {
    /// Manifest schema revision.
    pub schema_version: u32,
    /// The verb this run executed (`build`, `persist`, ..., `all`).
    pub verb: String,
    /// Hash over all semantically relevant configuration (everything
    /// except the output directory and worker count).
    pub config_hash: String,
    /// Component versions, keyed by component name.
    pub versions: BTreeMap<String, String>,
    /// Fixed conventions a reader needs to interpret the outputs.
    pub conventions: BTreeMap<String, String>,
    /// Number of publication records ingested.
    pub record_count: usize,
    /// Fields covered by the task grid, sorted.
    pub fields: Vec<String>,
    /// Periods covered by the task grid, ascending.
    pub periods: Vec<i32>,
    /// One entry per (field, period, kind) task, sorted.
    pub tasks: Vec<TaskEntry>,
    /// One entry per null-model group (reference task × model × param).
    pub null_groups: Vec<NullGroupEntry>,
    /// Relative path → SHA-256 content hash for every file written.
    pub outputs: BTreeMap<String, String>,
}

/// Status and basic size counters for one grid task.
#[derive(Debug, Serialize)]
pub struct TaskEntry {
    /// Field label.
    pub field: String,
    /// Period.
    pub period: i32,
    /// `knowledge` or `collaboration`.
    pub kind: String,
    /// Trailing window length in periods.
    pub window: u32,
    /// `ok`, `empty`, or `failed`.
    pub status: String,
    /// Failure reason, present only for `failed` tasks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Network node count, when the network was built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    /// Network edge count, when the network was built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    /// Total cells enumerated, when the filtration was built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<u64>,
}

/// Status for one null-model comparison group.
#[derive(Debug, Serialize)]
pub struct NullGroupEntry {
    /// Field of the reference network.
    pub field: String,
    /// Period of the reference network.
    pub period: i32,
    /// Model label (`er`, `ba`, `ws`).
    pub model: String,
    /// Rewiring probability for `ws`; absent otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
    /// `ok`, `infeasible`, or `failed`.
    pub status: String,
    /// Explanation for non-`ok` groups.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Edge count of the reference network each instance is matched to.
    pub target_edge_count: usize,
    /// Edge count the model actually realizes; differs from the target
    /// only for `ws`, whose ring construction quantizes the count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual_edge_count: Option<usize>,
    /// Signed difference `actual − target` when both are known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_count_delta: Option<i64>,
    /// Number of seeded instances generated.
    pub instances: usize,
}

/// The fixed interpretation rules written into every manifest.
pub fn conventions() -> BTreeMap<String, String> {
    let mut c = BTreeMap::new();
    c.insert(
        "edge_filtration".to_string(),
        "edges enter at 1/weight; vertices at 0; a simplex at the max over its edges".to_string(),
    );
    c.insert(
        "empty_cells".to_string(),
        "empty CSV cells mean 'not computed' (beyond a cap or undefined), never zero".to_string(),
    );
    c.insert(
        "essential_classes".to_string(),
        "diagram distances match infinite-death points by birth; unequal counts give inf".to_string(),
    );
    c.insert(
        "infinities".to_string(),
        "infinite values are written as the literal 'inf' / '-inf'".to_string(),
    );
    c.insert(
        "window".to_string(),
        "a window of w periods pools records from the w periods ending at the row's period".to_string(),
    );
    c.insert(
        "zero_variance_t_test".to_string(),
        "when a null ensemble has zero variance: p=1 if the observation equals the ensemble mean, else p=0 with t=±inf".to_string(),
    );
    c
}

/// SHA-256 of a file's contents, lowercase hex.
pub fn file_sha256(path: &Path) -> Result<String> {
    let mut file = std::fs::File::open(path)
        .with_context(|| format!("cannot hash {}", path.display()))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Hash every file in `paths` (relative to `dir`) into the manifest's
/// output map.
pub fn hash_outputs(dir: &Path, paths: &[PathBuf]) -> Result<BTreeMap<String, String>> {
    let mut outputs = BTreeMap::new();
    for rel in paths {
        let digest = file_sha256(&dir.join(rel))?;
        // Forward slashes keep the manifest platform-independent.
        let key = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        outputs.insert(key, digest);
    }
    Ok(outputs)
}

/// Serialize the manifest to `dir/run_manifest.json` and return its path.
pub fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<PathBuf> {
    let path = dir.join(MANIFEST_NAME);
    let mut text = serde_json::to_string_pretty(manifest)?;
    text.push('\n');
    std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hashing_matches_known_digest() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        std::fs::write(&path, "abc").unwrap();
        assert_eq!(
            file_sha256(&path).unwrap(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn manifest_serialization_is_stable_and_skips_absent_fields() {
        let manifest = Manifest {
            schema_version: 1,
            verb: "build".to_string(),
            config_hash: "deadbeef".to_string(),
            versions: BTreeMap::from([("core".to_string(), "0.1.0".to_string())]),
            conventions: conventions(),
            record_count: 3,
            fields: vec!["phys".to_string()],
            periods: vec![2001],
            tasks: vec![TaskEntry {
                field: "phys".to_string(),
                period: 2001,
                kind: "knowledge".to_string(),
                window: 1,
                status: "ok".to_string(),
                detail: None,
                nodes: Some(4),
                edges: Some(3),
                cells: Some(8),
            }],
            null_groups: vec![],
            outputs: BTreeMap::new(),
        };
        let dir = tempfile::tempdir().unwrap();
        let p1 = write_manifest(dir.path(), &manifest).unwrap();
        let first = std::fs::read_to_string(&p1).unwrap();
        let p2 = write_manifest(dir.path(), &manifest).unwrap();
        let second = std::fs::read_to_string(&p2).unwrap();
        assert_eq!(first, second, "identical manifests must serialize identically");
        assert!(first.ends_with('\n'));
        assert!(!first.contains("detail"), "absent optional fields are skipped");
        assert!(first.contains("\"nodes\": 4"));
    }

    #[test]
    fn output_hashing_uses_forward_slash_keys() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::create_dir(dir.path().join("sub")).unwrap();
        std::fs::write(dir.path().join("sub").join("f.csv"), "x").unwrap();
        let outputs = hash_outputs(dir.path(), &[PathBuf::from("sub").join("f.csv")]).unwrap();
        assert!(outputs.contains_key("sub/f.csv"));
    }
}
