//! Benchmark-construction and evaluation toolkit for extreme image inpainting:
//! procedural degradation masks (box, cellular-automata, free-form strokes),
//! the masking algebra, full-reference fidelity metrics, dataset curation and
//! per-mask-type analysis reports.

pub mod analysis;
pub mod dataset;
pub mod degrade;
pub mod error;
pub mod image;
pub mod io;
pub mod manifest;
pub mod mask;
pub mod maskgen;
pub mod metrics;
pub mod plugin;
pub mod records;
pub mod rng;
pub mod semantic;

pub use error::{Error, Result};
pub use image::ImageBuffer;
pub use manifest::{ImageEntry, MaskAssignment, MaskType, RunManifest, SplitTag};
pub use mask::MaskGrid;
pub use metrics::{AggregateStats, MetricRecord};
pub use rng::{SeededRng, RNG_ALGORITHM};
pub use semantic::SemanticMap;
