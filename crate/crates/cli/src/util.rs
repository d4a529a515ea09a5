use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use serde::Serialize;

use inpaintbench_core::RNG_ALGORITHM;

pub struct Context {
    pub seed: u64,
    pub out: PathBuf,
}

impl Context {
    pub fn ensure_out(&self) -> Result<()> {
        fs::create_dir_all(&self.out)
            .with_context(|| format!("creating output directory {}", self.out.display()))
    }

    /// Every run leaves a record of its resolved configuration and seeds.
    pub fn write_run_record<T: Serialize>(&self, command: &str, config: &T) -> Result<()> {
        #[derive(Serialize)]
        struct RunRecord<'a, T> {
            command: &'a str,
            config: &'a T,
            rng_algorithm: &'a str,
            seed: u64,
            version: &'a str,
        }
        let record = RunRecord {
            command,
            config,
            rng_algorithm: RNG_ALGORITHM,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION"),
        };
        let value = serde_json::to_value(&record)?;
        let mut text = serde_json::to_string_pretty(&value)?;
        text.push('\n');
        let path = self.out.join("run_record.json");
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }
}

/// Sorted (id, path) pairs for every `.png` directly inside `dir`.
pub fn list_pngs(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let mut entries = Vec::new();
    let read = fs::read_dir(dir).with_context(|| format!("reading directory {}", dir.display()))?;
    for entry in read {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("png")) {
            let id = path
                .file_stem()
                .and_then(|s| s.to_str())
                .with_context(|| format!("non-UTF-8 file name {}", path.display()))?
                .to_owned();
            entries.push((id, path));
        }
    }
    entries.sort();
    Ok(entries)
}

pub fn write_id_list(path: &Path, ids: &[String]) -> Result<()> {
    let mut text = ids.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_id_list(path: &Path) -> Result<Vec<String>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect())
}

/// Absolute form of a user-supplied path, so manifests stay resolvable from
/// anywhere.
pub fn absolutize(path: &Path) -> Result<PathBuf> {
    if path.is_absolute() {
        Ok(path.to_owned())
    } else {
        Ok(std::env::current_dir()?.join(path))
    }
}
