use anyhow::{Context as _, Result};
use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use inpaintbench_core::io::save_mask;
use inpaintbench_core::{MaskType, SeededRng};

use crate::cmd::{GeneratorOverrides, MaskTypeArg};
use crate::util::Context;

#[derive(Debug, clap::Args, Serialize)]
pub struct GenmaskArgs {
    /// Mask family; `mixed` samples the three families uniformly per mask.
    #[arg(long, value_enum)]
    pub r#type: MaskTypeArg,
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub height: usize,
    /// Number of masks to generate.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[command(flatten)]
    pub overrides: GeneratorOverrides,
}

#[derive(Serialize)]
struct MaskRecord {
    file: String,
    index: usize,
    mask_type: MaskType,
    seed: u64,
}

#[derive(Serialize)]
struct GenmaskRecord<'a> {
    args: &'a GenmaskArgs,
    masks: Vec<MaskRecord>,
}

pub fn run(ctx: &Context, args: &GenmaskArgs) -> Result<()> {
    ctx.ensure_out()?;
    let root = SeededRng::new(ctx.seed);

    // Per-mask seeds are derived up front so workers never share a stream and
    // each mask regenerates from its recorded seed alone.
    let plan: Vec<(usize, MaskType, u64)> = (0..args.count)
        .map(|i| {
            let mask_type = args.r#type.resolve(&mut root.substream(&format!("mix/{i:04}")));
            let seed = root.substream(&format!("mask/{i:04}")).next_u64();
            (i, mask_type, seed)
        })
        .collect();

    let masks = plan
        .par_iter()
        .map(|&(index, mask_type, seed)| {
            let mut rng = SeededRng::new(seed);
            let mask = args
                .overrides
                .generate(mask_type, args.width, args.height, &mut rng)?;
            let file = format!("mask_{index:04}.png");
            save_mask(&mask, ctx.out.join(&file))
                .with_context(|| format!("writing mask {index}"))?;
            Ok(MaskRecord {
                file,
                index,
                mask_type,
                seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    ctx.write_run_record("genmask", &GenmaskRecord { args, masks })?;
    println!(
        "generated {} {} mask(s) at {}x{} under {}",
        args.count,
        match args.r#type {
            MaskTypeArg::Mixed => "mixed".to_owned(),
            _ => plan
                .first()
                .map(|(_, t, _)| t.to_string())
                .unwrap_or_default(),
        },
        args.width,
        args.height,
        ctx.out.display()
    );
    Ok(())
}
