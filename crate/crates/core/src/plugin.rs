//! External metric plug-ins (FID, LPIPS, ...).
//!
//! Contract: the plug-in is invoked as `command <gt_dir> <out_dir>` and must
//! print one JSON object on stdout, either `{"scalar": x}` for a set-level
//! metric or `{"per_image": {"id": x, ...}}` for a per-image one.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metrics::MetricRecord;

#[derive(Debug, Clone, PartialEq)]
pub enum PluginOutput {
    Scalar(f64),
    PerImage(BTreeMap<String, f64>),
}

#[derive(Deserialize)]
struct PluginJson {
    scalar: Option<f64>,
    per_image: Option<BTreeMap<String, f64>>,
}

fn excerpt(bytes: &[u8]) -> String {
    let text = String::from_utf8_lossy(bytes);
    let trimmed = text.trim();
    if trimmed.len() > 200 {
        format!("{}...", &trimmed[..200])
    } else {
        trimmed.to_owned()
    }
}

/// Run one plug-in over a ground-truth and an output directory.
pub fn run_plugin_metric(
    name: &str,
    command: &str,
    gt_dir: &Path,
    out_dir: &Path,
) -> Result<PluginOutput> {
    let mut parts = command.split_whitespace();
    let program = parts.next().ok_or_else(|| Error::Plugin {
        name: name.to_owned(),
        detail: "empty command".into(),
    })?;
    let output = Command::new(program)
        .args(parts)
        .arg(gt_dir)
        .arg(out_dir)
        .output()
        .map_err(|e| Error::Plugin {
            name: name.to_owned(),
            detail: format!("failed to launch '{program}': {e}"),
        })?;
    if !output.status.success() {
        return Err(Error::Plugin {
            name: name.to_owned(),
            detail: format!(
                "exit status {}; stderr: {}",
                output.status,
                excerpt(&output.stderr)
            ),
        });
    }
    let parsed: PluginJson = serde_json::from_slice(&output.stdout).map_err(|e| Error::Plugin {
        name: name.to_owned(),
        detail: format!("unparseable output ({e}); stdout: {}", excerpt(&output.stdout)),
    })?;
    match (parsed.scalar, parsed.per_image) {
        (Some(v), None) => Ok(PluginOutput::Scalar(v)),
        (None, Some(map)) => Ok(PluginOutput::PerImage(map)),
        _ => Err(Error::Plugin {
            name: name.to_owned(),
            detail: format!(
                "expected exactly one of 'scalar' or 'per_image'; stdout: {}",
                excerpt(&output.stdout)
            ),
        }),
    }
}

/// Merge a per-image plug-in result into existing records. Every plug-in id
/// must match a record; unmatched ids are an error.
pub fn attach_per_image(
    name: &str,
    values: &BTreeMap<String, f64>,
    records: &mut [MetricRecord],
) -> Result<()> {
    let unmatched: Vec<&str> = values
        .keys()
        .filter(|id| !records.iter().any(|r| &r.image_id == *id))
        .map(String::as_str)
        .collect();
    if !unmatched.is_empty() {
        return Err(Error::Plugin {
            name: name.to_owned(),
            detail: format!("ids not in run: {}", unmatched.join(", ")),
        });
    }
    for record in records.iter_mut() {
        if let Some(&v) = values.get(&record.image_id) {
            record.plugin_values.insert(name.to_owned(), v);
        }
    }
    Ok(())
}
