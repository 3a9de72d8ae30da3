use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::VerificationReport;

/// SHA-256 of the report's JSON with `wall_time` removed.
pub fn content_hash(report: &VerificationReport) -> String {
    let mut value = serde_json::to_value(report).expect("reports serialize");
    if let Some(map) = value.as_object_mut() {
        map.remove("wall_time");
    }
    let bytes = serde_json::to_vec(&value).expect("values serialize");
    hex::encode(Sha256::digest(&bytes))
}

pub fn report_file_name(report: &VerificationReport) -> String {
    format!("{}-{}.json", report.campaign.claim_id, &content_hash(report)[..16])
}

/// Writes `report` under `dir` as `<claim>-<hash>.json`. Existing files are
/// never touched: a report with the same content is already on disk.
pub fn persist_report(report: &VerificationReport, dir: &Path) -> io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(report_file_name(report));
    match OpenOptions::new().write(true).create_new(true).open(&path) {
        Ok(mut file) => {
            let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
            text.push('\n');
            file.write_all(text.as_bytes())?;
            Ok(path)
        }
        Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Ok(path),
        Err(e) => Err(e),
    }
}
