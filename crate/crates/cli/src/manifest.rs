//! Run manifests: deterministic identification of a computation, cache
//! keys, and output checksums.
//!
//! The checksum covers only the deterministic core (tool, version,
//! subcommand, parameters, tolerances); wall time and output digests ride
//! along for the record but do not enter the key, so re-running an
//! identical manifest reproduces outputs bit-exactly and hits the cache.

use crate::CliError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestCore {
    pub tool: String,
    pub version: String,
    pub format_version: u32,
    pub subcommand: String,
    /// Flag values serialized as strings, sorted by key.
    pub parameters: BTreeMap<String, String>,
    /// Numerical tolerances in effect, sorted by key.
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(flatten)]
    pub core: ManifestCore,
    pub manifest_checksum: String,
    pub wall_time_seconds: f64,
    pub cached: bool,
    pub outputs: Vec<OutputRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
}

impl ManifestCore {
    pub fn new(subcommand: &str) -> Self {
        Self {
            tool: "blockent".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            format_version: FORMAT_VERSION,
            subcommand: subcommand.to_string(),
            parameters: BTreeMap::new(),
            tolerances: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_string(), value);
        self
    }

    /// Checksum of the canonical JSON serialization of the core.
    pub fn checksum(&self) -> String {
        let canon = serde_json::to_string(self).expect("manifest core serializes");
        hex_digest(canon.as_bytes())
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Sidecar manifest path for an output file: `curve.csv` ->
/// `curve.manifest.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("output");
    out.with_file_name(format!("{stem}.manifest.json"))
}

/// Resolve the cache directory: flag beats BLOCKENT_CACHE_DIR; absent both,
/// caching is off.
pub fn cache_dir(flag: &Option<PathBuf>) -> Option<PathBuf> {
    flag.clone().or_else(|| std::env::var_os("BLOCKENT_CACHE_DIR").map(PathBuf::from))
}

/// Write `content` to `out`, record the manifest sidecar, and populate the
/// cache. `produce` is only invoked on a cache miss.
pub fn emit_with_cache(
    core: ManifestCore,
    out: &Path,
    cache: Option<PathBuf>,
    produce: impl FnOnce() -> Result<String, CliError>,
) -> Result<(), CliError> {
    let started = std::time::Instant::now();
    let checksum = core.checksum();
    let cache_file = cache.as_ref().map(|d| d.join(format!("{checksum}.csv")));

    let (content, was_cached) = match &cache_file {
        Some(cf) if cf.is_file() => (std::fs::read_to_string(cf)?, true),
        _ => {
            let content = produce()?;
            if let Some(cf) = &cache_file {
                if let Some(dir) = cf.parent() {
                    std::fs::create_dir_all(dir)?;
                }
                std::fs::write(cf, &content)?;
            }
            (content, false)
        }
    };

    std::fs::write(out, &content)?;
    let manifest = RunManifest {
        manifest_checksum: checksum,
        wall_time_seconds: started.elapsed().as_secs_f64(),
        cached: was_cached,
        outputs: vec![OutputRecord {
            path: out.display().to_string(),
            sha256: hex_digest(content.as_bytes()),
        }],
        core,
    };
    let sidecar = sidecar_path(out);
    std::fs::write(&sidecar, serde_json::to_string_pretty(&manifest).expect("manifest serializes"))?;
    Ok(())
}

/// Load a produced CSV together with its sidecar manifest, refusing
/// mismatched provenance (embedded checksum vs recomputed core checksum).
pub fn load_with_provenance(path: &Path) -> Result<(String, RunManifest), CliError> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let sidecar = sidecar_path(path);
    let manifest: RunManifest = serde_json::from_str(
        &std::fs::read_to_string(&sidecar)
            .map_err(|e| CliError::Usage(format!("missing manifest sidecar {}: {e}", sidecar.display())))?,
    )
    .map_err(|e| CliError::Usage(format!("malformed manifest {}: {e}", sidecar.display())))?;

    if manifest.core.checksum() != manifest.manifest_checksum {
        return Err(CliError::Usage(format!(
            "provenance mismatch for {}: manifest checksum does not match its own core",
            path.display()
        )));
    }
    let embedded = content
        .lines()
        .find_map(|l| l.strip_prefix("# manifest_checksum: "))
        .map(str::to_string);
    if embedded.as_deref() != Some(manifest.manifest_checksum.as_str()) {
        return Err(CliError::Usage(format!(
            "provenance mismatch: {} does not carry the checksum of its manifest",
            path.display()
        )));
    }
    Ok((content, manifest))
}
