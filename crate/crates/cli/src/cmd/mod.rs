pub mod degrade;
pub mod evaluate;
pub mod filter;
pub mod genmask;
pub mod report;
pub mod split;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

use inpaintbench_core::maskgen::{
    box_mask, ca_mask, freeform_mask, BoxParams, BrushParams, CaParams,
};
use inpaintbench_core::{MaskGrid, MaskType, SeededRng};

/// Mask family selector shared by `genmask` and `degrade --gen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskTypeArg {
    Box,
    Ca,
    Freeform,
    Mixed,
}

impl MaskTypeArg {
    /// Concrete family for one item; `mixed` draws uniformly from the three.
    pub fn resolve(self, rng: &mut SeededRng) -> MaskType {
        use rand::Rng;
        match self {
            MaskTypeArg::Box => MaskType::Box,
            MaskTypeArg::Ca => MaskType::CellularAutomata,
            MaskTypeArg::Freeform => MaskType::FreeForm,
            MaskTypeArg::Mixed => MaskType::ALL[rng.gen_range(0..3)],
        }
    }
}

/// Optional overrides of the generator defaults; absent flags keep defaults.
#[derive(Debug, Clone, Default, clap::Args, Serialize)]
pub struct GeneratorOverrides {
    #[arg(long, help_heading = "Box generator")]
    pub box_frac_min: Option<f64>,
    #[arg(long, help_heading = "Box generator")]
    pub box_frac_max: Option<f64>,

    #[arg(long, help_heading = "Cellular-automata generator")]
    pub ca_downscale: Option<usize>,
    #[arg(long, help_heading = "Cellular-automata generator")]
    pub ca_steps: Option<usize>,
    #[arg(long, help_heading = "Cellular-automata generator")]
    pub ca_density: Option<f64>,
    #[arg(long, help_heading = "Cellular-automata generator")]
    pub ca_dilation: Option<usize>,

    #[arg(long, help_heading = "Free-form generator")]
    pub brush_strokes_min: Option<usize>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_strokes_max: Option<usize>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_vertices_min: Option<usize>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_vertices_max: Option<usize>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_len_min: Option<f64>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_len_max: Option<f64>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_width_min: Option<f64>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_width_max: Option<f64>,
    #[arg(long, help_heading = "Free-form generator")]
    pub brush_jitter: Option<f64>,
}

impl GeneratorOverrides {
    pub fn box_params(&self) -> BoxParams {
        let mut p = BoxParams::default();
        if let Some(v) = self.box_frac_min {
            p.fraction_range.0 = v;
        }
        if let Some(v) = self.box_frac_max {
            p.fraction_range.1 = v;
        }
        p
    }

    pub fn ca_params(&self) -> CaParams {
        let mut p = CaParams::default();
        if let Some(v) = self.ca_downscale {
            p.downscale = v;
        }
        if let Some(v) = self.ca_steps {
            p.steps = v;
        }
        if let Some(v) = self.ca_density {
            p.init_density = v;
        }
        if let Some(v) = self.ca_dilation {
            p.dilation_radius = v;
        }
        p
    }

    pub fn brush_params(&self) -> BrushParams {
        let mut p = BrushParams::default();
        if let Some(v) = self.brush_strokes_min {
            p.stroke_count_range.0 = v;
        }
        if let Some(v) = self.brush_strokes_max {
            p.stroke_count_range.1 = v;
        }
        if let Some(v) = self.brush_vertices_min {
            p.vertices_per_stroke.0 = v;
        }
        if let Some(v) = self.brush_vertices_max {
            p.vertices_per_stroke.1 = v;
        }
        if let Some(v) = self.brush_len_min {
            p.segment_length_range.0 = v;
        }
        if let Some(v) = self.brush_len_max {
            p.segment_length_range.1 = v;
        }
        if let Some(v) = self.brush_width_min {
            p.brush_width_range.0 = v;
        }
        if let Some(v) = self.brush_width_max {
            p.brush_width_range.1 = v;
        }
        if let Some(v) = self.brush_jitter {
            p.angle_jitter = v;
        }
        p
    }

    pub fn generate(
        &self,
        mask_type: MaskType,
        width: usize,
        height: usize,
        rng: &mut SeededRng,
    ) -> Result<MaskGrid> {
        let mask = match mask_type {
            MaskType::Box => box_mask(width, height, &self.box_params(), rng)?,
            MaskType::CellularAutomata => ca_mask(width, height, &self.ca_params(), rng)?,
            MaskType::FreeForm => freeform_mask(width, height, &self.brush_params(), rng)?,
        };
        Ok(mask)
    }
}
