use std::path::PathBuf;

use anyhow::{bail, Context as _, Result};
use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use inpaintbench_core::degrade::degrade_pair;
use inpaintbench_core::io::{load_image, load_mask, load_semantic_map, save_image, save_mask};
use inpaintbench_core::{
    ImageEntry, MaskAssignment, MaskType, RunManifest, SeededRng, SplitTag,
};

use crate::cmd::{GeneratorOverrides, MaskTypeArg};
use crate::util::{absolutize, list_pngs, Context};

#[derive(Debug, clap::Args, Serialize)]
pub struct DegradeArgs {
    /// Directory of ground-truth PNG images; file stems become image ids.
    #[arg(long)]
    pub images: PathBuf,

    /// Directory of pre-made masks, one `<id>.png` per image.
    #[arg(long, conflicts_with = "gen", requires = "mask_type")]
    pub masks: Option<PathBuf>,

    /// Generate one mask per image instead of loading them.
    #[arg(long, value_enum, required_unless_present = "masks")]
    pub gen: Option<MaskTypeArg>,

    /// Declared family of the pre-made masks (required with --masks).
    #[arg(long)]
    pub mask_type: Option<MaskType>,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub track: u8,

    /// Directory of semantic maps, one `<id>.png` per image (track 2).
    #[arg(long)]
    pub semantics: Option<PathBuf>,

    /// Which dataset partition this run draws from.
    #[arg(long, value_enum, default_value = "shared")]
    pub split_tag: SplitTagArg,

    #[command(flatten)]
    pub overrides: GeneratorOverrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitTagArg {
    Track1Only,
    Track2Only,
    Shared,
}

impl From<SplitTagArg> for SplitTag {
    fn from(tag: SplitTagArg) -> Self {
        match tag {
            SplitTagArg::Track1Only => SplitTag::Track1Only,
            SplitTagArg::Track2Only => SplitTag::Track2Only,
            SplitTagArg::Shared => SplitTag::Shared,
        }
    }
}

pub fn run(ctx: &Context, args: &DegradeArgs) -> Result<()> {
    let images = list_pngs(&args.images)?;
    if images.is_empty() {
        bail!("no PNG images found in {}", args.images.display());
    }
    if args.track == 2 && args.semantics.is_none() {
        bail!("--track 2 requires --semantics");
    }
    ctx.ensure_out()?;
    std::fs::create_dir_all(ctx.out.join("inputs"))?;
    std::fs::create_dir_all(ctx.out.join("masks"))?;

    let root = SeededRng::new(ctx.seed);
    let plan: Vec<(String, PathBuf, Option<(MaskType, u64)>)> = images
        .iter()
        .map(|(id, path)| {
            let generated = args.gen.map(|g| {
                let mask_type = g.resolve(&mut root.substream(&format!("mix/{id}")));
                let seed = root.substream(&format!("mask/{id}")).next_u64();
                (mask_type, seed)
            });
            (id.clone(), path.clone(), generated)
        })
        .collect();

    let assignments = plan
        .par_iter()
        .map(|(id, image_path, generated)| {
            let gt = load_image(image_path)?;
            let (mask, mask_type, seed) = match generated {
                Some((mask_type, seed)) => {
                    let mut rng = SeededRng::new(*seed);
                    let mask =
                        args.overrides
                            .generate(*mask_type, gt.width(), gt.height(), &mut rng)?;
                    (mask, *mask_type, Some(*seed))
                }
                None => {
                    let masks_dir = args.masks.as_ref().expect("clap enforces masks|gen");
                    let mask = load_mask(masks_dir.join(format!("{id}.png")))?;
                    (mask, args.mask_type.expect("clap requires mask_type"), None)
                }
            };
            let semantic = match (args.track, &args.semantics) {
                (2, Some(dir)) => Some(load_semantic_map(dir.join(format!("{id}.png")))?),
                _ => None,
            };
            let pair = degrade_pair(&gt, semantic.as_ref(), &mask)?;
            save_image(&pair.input, ctx.out.join("inputs").join(format!("{id}.png")))?;
            save_mask(&pair.mask, ctx.out.join("masks").join(format!("{id}.png")))?;
            Ok(MaskAssignment {
                image_id: id.clone(),
                mask_type,
                mask_path: Some(PathBuf::from(format!("masks/{id}.png"))),
                seed,
            })
        })
        .collect::<Result<Vec<_>>>()
        .context("degrading images")?;

    let entries = images
        .iter()
        .map(|(id, path)| {
            let semantic = match (args.track, &args.semantics) {
                (2, Some(dir)) => Some(absolutize(&dir.join(format!("{id}.png")))?),
                _ => None,
            };
            Ok(ImageEntry {
                id: id.clone(),
                image: absolutize(path)?,
                semantic,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let manifest = RunManifest::new(entries, assignments, args.track, args.split_tag.into())?;
    manifest.save(ctx.out.join("manifest.json"))?;
    ctx.write_run_record("degrade", args)?;
    println!(
        "degraded {} image(s); manifest at {}",
        images.len(),
        ctx.out.join("manifest.json").display()
    );
    Ok(())
}
