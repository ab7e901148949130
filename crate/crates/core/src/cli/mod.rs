//! Command-line orchestration.

mod commands;
mod config;
mod csv;

use std::path::Path;

use crate::error::Result;

pub use self::csv::{fmt_num, from_csv, read_csv, run_id, to_csv, write_csv, ResultRecord, HEADER};
pub use commands::{
    cmd_compare, cmd_oracle, cmd_sample, cmd_scan, cmd_verify, compare_records, exit_code, CompareRow, Outcome,
};
pub use config::{parse_observables, Overrides, RunConfig};

/// Write `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
