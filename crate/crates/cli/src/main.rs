//! Benchmark pipeline CLI: mask generation, degradation, dataset curation,
//! evaluation and reporting.
//!
//! Exit status: 0 on success, 1 on a domain error (bad image, missing file,
//! failed plug-in), 2 on a usage error.

mod cmd;
mod util;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "inpaintbench", version, about)]
struct Cli {
    /// Root seed; every run with an explicit seed is fully reproducible.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads; defaults to available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output directory; all artifacts are written beneath it.
    #[arg(long, global = true, default_value = "out")]
    out: std::path::PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate degradation masks.
    Genmask(cmd::genmask::GenmaskArgs),
    /// Mask ground-truth images and emit a run manifest.
    Degrade(cmd::degrade::DegradeArgs),
    /// Curate an image set by semantic class coverage.
    Filter(cmd::filter::FilterArgs),
    /// Split a curated id list into the three track parts.
    Split(cmd::split::SplitArgs),
    /// Score submitted outputs against a run manifest.
    Evaluate(cmd::evaluate::EvaluateArgs),
    /// Turn metric records into tables, scatter series and comparisons.
    Report(cmd::report::ReportArgs),
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    let ctx = util::Context {
        seed: cli.seed,
        out: cli.out,
    };
    let result = match cli.command {
        Command::Genmask(args) => cmd::genmask::run(&ctx, &args),
        Command::Degrade(args) => cmd::degrade::run(&ctx, &args),
        Command::Filter(args) => cmd::filter::run(&ctx, &args),
        Command::Split(args) => cmd::split::run(&ctx, &args),
        Command::Evaluate(args) => cmd::evaluate::run(&ctx, &args),
        Command::Report(args) => cmd::report::run(&ctx, &args),
    };
    match result {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
