use std::path::PathBuf;

use anyhow::Result;
use serde::Serialize;

use inpaintbench_core::dataset::three_way_split;
use inpaintbench_core::SeededRng;

use crate::util::{read_id_list, write_id_list, Context};

#[derive(Debug, clap::Args, Serialize)]
pub struct SplitArgs {
    /// File with one image id per line.
    #[arg(long)]
    pub ids: PathBuf,
}

pub fn run(ctx: &Context, args: &SplitArgs) -> Result<()> {
    let ids = read_id_list(&args.ids)?;
    let mut rng = SeededRng::new(ctx.seed).substream("split");
    let split = three_way_split(&ids, &mut rng)?;

    ctx.ensure_out()?;
    write_id_list(&ctx.out.join("track1_only.txt"), &split.track1_only)?;
    write_id_list(&ctx.out.join("track2_only.txt"), &split.track2_only)?;
    write_id_list(&ctx.out.join("shared.txt"), &split.shared)?;
    ctx.write_run_record("split", args)?;

    println!(
        "split {} id(s) into {}/{}/{} (track1/track2/shared)",
        ids.len(),
        split.track1_only.len(),
        split.track2_only.len(),
        split.shared.len()
    );
    Ok(())
}
