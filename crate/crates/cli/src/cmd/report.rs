use std::path::PathBuf;

use anyhow::Result;
use serde::Serialize;

use inpaintbench_core::analysis::{
    compare_runs, comparison_to_csv, per_mask_type_table, scatter_series, scatter_to_csv,
    table_to_csv, table_to_text,
};
use inpaintbench_core::records::read_records_csv;

use crate::util::Context;

#[derive(Debug, clap::Args, Serialize)]
pub struct ReportArgs {
    /// Metric records CSV produced by `evaluate`.
    #[arg(long)]
    pub records: PathBuf,

    /// Emit the per-mask-type aggregate table.
    #[arg(long)]
    pub by_mask_type: bool,

    /// Emit a missing-fraction scatter series for the named metric.
    #[arg(long, value_name = "METRIC")]
    pub scatter: Option<String>,

    /// Compare against a second records CSV over the shared image ids.
    #[arg(long, value_name = "OTHER_CSV")]
    pub compare: Option<PathBuf>,
}

pub fn run(ctx: &Context, args: &ReportArgs) -> Result<()> {
    let records = read_records_csv(&args.records)?;
    ctx.ensure_out()?;
    ctx.write_run_record("report", args)?;

    // With no mode flags the aggregate table still goes to stdout.
    let table = per_mask_type_table(&records)?;
    print!("{}", table_to_text(&table));
    if args.by_mask_type {
        std::fs::write(ctx.out.join("by_mask_type.csv"), table_to_csv(&table))?;
        std::fs::write(ctx.out.join("by_mask_type.txt"), table_to_text(&table))?;
    }

    if let Some(metric) = &args.scatter {
        let points = scatter_series(&records, metric)?;
        std::fs::write(
            ctx.out.join(format!("scatter_{metric}.csv")),
            scatter_to_csv(&points),
        )?;
    }

    if let Some(other) = &args.compare {
        let other_records = read_records_csv(other)?;
        let comparison = compare_runs(&records, &other_records)?;
        std::fs::write(ctx.out.join("comparison.csv"), comparison_to_csv(&comparison))?;
        for (metric, stats) in &comparison.summary {
            println!(
                "delta {metric}: mean {:.6} \u{b1} {:.6} over {} shared image(s)",
                stats.mean, stats.std, stats.n
            );
        }
    }
    Ok(())
}
