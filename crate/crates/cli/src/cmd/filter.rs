use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use serde::Serialize;

use inpaintbench_core::dataset::{
    compute_class_stats, filter_by_coverage, select_classes, translate_labels, LabelMapping,
};
use inpaintbench_core::io::load_semantic_map;

use crate::util::{list_pngs, write_id_list, Context};

#[derive(Debug, clap::Args, Serialize)]
pub struct FilterArgs {
    /// Directory of semantic maps; file stems become image ids.
    #[arg(long)]
    pub semantics: PathBuf,

    /// Top-k classes by image occurrence.
    #[arg(long, default_value_t = 30)]
    pub k_image: usize,

    /// Top-k classes by pixel count.
    #[arg(long, default_value_t = 30)]
    pub k_pixel: usize,

    /// Minimum fraction of pixels covered by the selected classes.
    #[arg(long, default_value_t = 0.90)]
    pub threshold: f64,

    /// Optional two-column label translation file applied before counting.
    #[arg(long)]
    pub mapping: Option<PathBuf>,
}

pub fn run(ctx: &Context, args: &FilterArgs) -> Result<()> {
    let files = list_pngs(&args.semantics)?;
    if files.is_empty() {
        bail!("no semantic maps found in {}", args.semantics.display());
    }
    let mapping = args.mapping.as_ref().map(LabelMapping::load).transpose()?;

    let mut maps = Vec::with_capacity(files.len());
    let mut unmapped_total = 0u64;
    for (id, path) in &files {
        let mut map = load_semantic_map(path)?;
        if let Some(mapping) = &mapping {
            let (translated, unmapped) = translate_labels(&map, mapping);
            unmapped_total += unmapped;
            map = translated;
        }
        maps.push((id.clone(), map));
    }
    if unmapped_total > 0 {
        eprintln!("warning: {unmapped_total} pixel(s) had no label mapping");
    }

    let stats = compute_class_stats(maps.iter().map(|(_, m)| m));
    let selected = select_classes(&stats, args.k_image, args.k_pixel)?;
    let kept = filter_by_coverage(
        maps.iter().map(|(id, m)| (id.as_str(), m)),
        &selected,
        args.threshold,
    )?;

    ctx.ensure_out()?;
    write_id_list(&ctx.out.join("kept.txt"), &kept)?;
    let classes: Vec<String> = selected.iter().map(u16::to_string).collect();
    write_id_list(&ctx.out.join("classes.txt"), &classes)?;

    let mut csv = String::from("class,image_count,pixel_count\n");
    for (class, count) in &stats.per_class {
        let _ = writeln!(csv, "{class},{},{}", count.image_count, count.pixel_count);
    }
    std::fs::write(ctx.out.join("class_stats.csv"), csv)?;
    ctx.write_run_record("filter", args)?;

    println!(
        "selected {} class(es); kept {} of {} image(s)",
        selected.len(),
        kept.len(),
        files.len()
    );
    Ok(())
}
