//! One JSON file per prime. A hit requires a clean parse, a schema match,
//! and the right modulus; anything else silently recomputes.

use markoff_core::{EllReport, SCHEMA_VERSION};
use std::fs;
use std::path::{Path, PathBuf};

/// Precedence: --cache-dir flag, then MARKOFF_CACHE_DIR, then ./.markoff-cache.
pub fn resolve_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("MARKOFF_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".markoff-cache"))
}

pub fn path_for(dir: &Path, ell: u64) -> PathBuf {
    dir.join(format!("ell_{ell}.json"))
}

pub fn load(dir: &Path, ell: u64) -> Option<EllReport> {
    let text = fs::read_to_string(path_for(dir, ell)).ok()?;
    let report: EllReport = serde_json::from_str(&text).ok()?;
    (report.schema_version == SCHEMA_VERSION && report.ell == ell).then_some(report)
}

pub fn store(dir: &Path, report: &EllReport) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    let path = path_for(dir, report.ell);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}
