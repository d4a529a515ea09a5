use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use serde::Serialize;

use inpaintbench_core::analysis::{per_mask_type_table, table_to_text};
use inpaintbench_core::manifest::resolve_path;
use inpaintbench_core::metrics::evaluate_run;
use inpaintbench_core::plugin::{attach_per_image, run_plugin_metric, PluginOutput};
use inpaintbench_core::records::{records_to_json, write_records_csv};
use inpaintbench_core::RunManifest;

use crate::util::Context;

#[derive(Debug, clap::Args, Serialize)]
pub struct EvaluateArgs {
    /// Run manifest; relative paths inside it resolve against its directory.
    #[arg(long)]
    pub manifest: PathBuf,

    /// Directory of submitted outputs, one `<id>.png` per manifest image.
    #[arg(long)]
    pub outputs: PathBuf,

    /// External metric as `name=command`; repeatable. The command is invoked
    /// as `command <gt_dir> <out_dir>` and must print JSON on stdout.
    #[arg(long = "plugin", value_name = "NAME=COMMAND")]
    pub plugins: Vec<String>,
}

/// Shared parent of all ground-truth images, handed to plug-ins.
fn ground_truth_dir(manifest: &RunManifest, root: &Path) -> Result<PathBuf> {
    let mut parents = manifest
        .images
        .iter()
        .filter_map(|e| resolve_path(root, &e.image).parent().map(Path::to_owned));
    let first = parents.next().context("manifest has no images")?;
    if parents.any(|p| p != first) {
        bail!("plug-ins need all ground-truth images in one directory");
    }
    Ok(first)
}

pub fn run(ctx: &Context, args: &EvaluateArgs) -> Result<()> {
    let manifest = RunManifest::load(&args.manifest)?;
    let root = args
        .manifest
        .parent()
        .map(Path::to_owned)
        .unwrap_or_else(|| PathBuf::from("."));

    ctx.ensure_out()?;
    ctx.write_run_record("evaluate", args)?;

    let mut outcome = evaluate_run(&manifest, &root, &args.outputs)?;
    for id in &outcome.missing_outputs {
        eprintln!("warning: no output for image '{id}'");
    }

    // Plug-in failures are reported but never abort the native metrics.
    let mut scalars: BTreeMap<String, f64> = BTreeMap::new();
    let mut failures = Vec::new();
    for spec in &args.plugins {
        let Some((name, command)) = spec.split_once('=') else {
            bail!("--plugin expects NAME=COMMAND, got '{spec}'");
        };
        let gt_dir = ground_truth_dir(&manifest, &root)?;
        match run_plugin_metric(name, command, &gt_dir, &args.outputs) {
            Ok(PluginOutput::Scalar(v)) => {
                scalars.insert(name.to_owned(), v);
            }
            Ok(PluginOutput::PerImage(values)) => {
                if let Err(e) = attach_per_image(name, &values, &mut outcome.records) {
                    eprintln!("error: {e}");
                    failures.push(name.to_owned());
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                failures.push(name.to_owned());
            }
        }
    }

    write_records_csv(&outcome.records, ctx.out.join("records.csv"))?;
    std::fs::write(ctx.out.join("records.json"), records_to_json(&outcome.records))?;
    if !scalars.is_empty() {
        let mut text = serde_json::to_string_pretty(&scalars)?;
        text.push('\n');
        std::fs::write(ctx.out.join("plugin_scalars.json"), text)?;
    }

    if !outcome.records.is_empty() {
        let table = per_mask_type_table(&outcome.records)?;
        print!("{}", table_to_text(&table));
    }
    for (name, value) in &scalars {
        println!("{name}: {value}");
    }
    println!(
        "scored {} image(s) ({} missing); records at {}",
        outcome.records.len(),
        outcome.missing_outputs.len(),
        ctx.out.join("records.csv").display()
    );
    if !failures.is_empty() {
        bail!("plug-in(s) failed: {}", failures.join(", "));
    }
    Ok(())
}
