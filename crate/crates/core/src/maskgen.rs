//! Procedural generation of the three degradation-mask families: axis-aligned
//! boxes, cellular-automata blobs, and free-form brush strokes.

use rand::Rng;

use crate::error::{Error, Result};
use crate::mask::MaskGrid;
use crate::rng::SeededRng;

/// Parameters for rectangular masks. The fraction range applies independently
/// to each dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxParams {
    pub fraction_range: (f64, f64),
}

impl Default for BoxParams {
    fn default() -> Self {
        Self {
            fraction_range: (0.30, 0.70),
        }
    }
}

impl BoxParams {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.fraction_range;
        if !(lo > 0.0 && lo <= hi && hi <= 1.0) {
            return Err(Error::InvalidParameter {
                what: "box fraction range".into(),
                detail: format!("[{lo}, {hi}] must satisfy 0 < lo <= hi <= 1"),
            });
        }
        Ok(())
    }
}

/// Parameters for cellular-automata masks.
#[derive(Debug, Clone, PartialEq)]
pub struct CaParams {
    pub downscale: usize,
    pub steps: usize,
    pub init_density: f64,
    pub dilation_radius: usize,
}

impl Default for CaParams {
    fn default() -> Self {
        Self {
            downscale: 4,
            steps: 3,
            init_density: 0.5,
            dilation_radius: 1,
        }
    }
}

impl CaParams {
    pub fn validate(&self) -> Result<()> {
        if ![1, 2, 4, 8].contains(&self.downscale) {
            return Err(Error::InvalidParameter {
                what: "ca downscale".into(),
                detail: format!("{} (expected 1, 2, 4 or 8)", self.downscale),
            });
        }
        if !(2..=5).contains(&self.steps) {
            return Err(Error::InvalidParameter {
                what: "ca steps".into(),
                detail: format!("{} (expected 2..=5)", self.steps),
            });
        }
        if !(0.0..=1.0).contains(&self.init_density) {
            return Err(Error::InvalidParameter {
                what: "ca init density".into(),
                detail: format!("{} outside [0, 1]", self.init_density),
            });
        }
        Ok(())
    }
}

/// Parameters for free-form brush-stroke masks. Lengths and widths are
/// fractions of the smaller image dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BrushParams {
    pub stroke_count_range: (usize, usize),
    pub vertices_per_stroke: (usize, usize),
    pub segment_length_range: (f64, f64),
    pub brush_width_range: (f64, f64),
    pub angle_jitter: f64,
}

impl Default for BrushParams {
    fn default() -> Self {
        Self {
            stroke_count_range: (1, 4),
            vertices_per_stroke: (4, 12),
            segment_length_range: (0.04, 0.15),
            brush_width_range: (0.04, 0.15),
            angle_jitter: std::f64::consts::FRAC_PI_4,
        }
    }
}

impl BrushParams {
    pub fn validate(&self) -> Result<()> {
        let ordered = |r: (usize, usize)| r.0 <= r.1;
        let positive = |r: (f64, f64)| r.0 > 0.0 && r.0 <= r.1;
        if !ordered(self.stroke_count_range)
            || !ordered(self.vertices_per_stroke)
            || self.vertices_per_stroke.0 < 2
            || !positive(self.segment_length_range)
            || !positive(self.brush_width_range)
            || self.angle_jitter < 0.0
        {
            return Err(Error::InvalidParameter {
                what: "brush parameters".into(),
                detail: "interval lows must not exceed highs; widths and lengths positive".into(),
            });
        }
        Ok(())
    }
}

/// One axis-aligned filled rectangle, extents drawn per dimension from the
/// fraction range, placement uniform over valid top-left corners.
pub fn box_mask(
    width: usize,
    height: usize,
    params: &BoxParams,
    rng: &mut SeededRng,
) -> Result<MaskGrid> {
    params.validate()?;
    if width < 4 || height < 4 {
        return Err(Error::ImageTooSmall {
            width,
            height,
            detail: "box masks need at least 4x4".into(),
        });
    }
    let (lo, hi) = params.fraction_range;
    let extent_range = |dim: usize| -> Result<(usize, usize)> {
        let min = ((lo * dim as f64).ceil() as usize).max(1);
        let max = ((hi * dim as f64).floor() as usize).min(dim);
        if min > max {
            return Err(Error::ImageTooSmall {
                width,
                height,
                detail: format!("no integer extent in [{lo}, {hi}] of {dim}"),
            });
        }
        Ok((min, max))
    };
    let (w_min, w_max) = extent_range(width)?;
    let (h_min, h_max) = extent_range(height)?;

    // Draw order is part of the determinism contract: w, h, x0, y0.
    let rect_w = rng.gen_range(w_min..=w_max);
    let rect_h = rng.gen_range(h_min..=h_max);
    let x0 = rng.gen_range(0..=width - rect_w);
    let y0 = rng.gen_range(0..=height - rect_h);

    let mut mask = MaskGrid::zeros(width, height);
    for y in y0..y0 + rect_h {
        for x in x0..x0 + rect_w {
            mask.set(x, y, 1);
        }
    }
    Ok(mask)
}

/// One automaton step: each cell becomes the majority of the 9 cells in its
/// 3x3 neighborhood, with replicate padding at the borders. 9 votes is odd so
/// there is never a tie.
pub fn ca_step(grid: &MaskGrid) -> MaskGrid {
    let (w, h) = (grid.width(), grid.height());
    let cells = grid.cells();
    let mut out = vec![0u8; w * h];
    for y in 0..h {
        let y_up = y.saturating_sub(1);
        let y_dn = (y + 1).min(h - 1);
        for x in 0..w {
            let x_lf = x.saturating_sub(1);
            let x_rt = (x + 1).min(w - 1);
            let mut ones = 0u32;
            for yy in [y_up, y, y_dn] {
                let row = yy * w;
                ones += u32::from(cells[row + x_lf])
                    + u32::from(cells[row + x])
                    + u32::from(cells[row + x_rt]);
            }
            out[y * w + x] = u8::from(ones >= 5);
        }
    }
    MaskGrid::from_parts_unchecked(w, h, out)
}

/// Square-element dilation: output cell is 1 iff any input 1 lies within
/// Chebyshev distance `radius`. Implemented as two separable run-max passes.
pub fn dilate(grid: &MaskGrid, radius: usize) -> MaskGrid {
    if radius == 0 {
        return grid.clone();
    }
    let (w, h) = (grid.width(), grid.height());
    let cells = grid.cells();
    let mut horiz = vec![0u8; w * h];
    for y in 0..h {
        let row = &cells[y * w..(y + 1) * w];
        for x in 0..w {
            let lo = x.saturating_sub(radius);
            let hi = (x + radius).min(w - 1);
            horiz[y * w + x] = u8::from(row[lo..=hi].contains(&1));
        }
    }
    let mut out = vec![0u8; w * h];
    for x in 0..w {
        for y in 0..h {
            let lo = y.saturating_sub(radius);
            let hi = (y + radius).min(h - 1);
            out[y * w + x] = u8::from((lo..=hi).any(|yy| horiz[yy * w + x] == 1));
        }
    }
    MaskGrid::from_parts_unchecked(w, h, out)
}

/// Block-replicate each cell into a `factor` x `factor` block.
pub fn upscale_nearest(grid: &MaskGrid, factor: usize) -> Result<MaskGrid> {
    if factor == 0 {
        return Err(Error::InvalidParameter {
            what: "upscale factor".into(),
            detail: "must be >= 1".into(),
        });
    }
    if factor == 1 {
        return Ok(grid.clone());
    }
    let (w, h) = (grid.width(), grid.height());
    let (ow, oh) = (w * factor, h * factor);
    let mut out = vec![0u8; ow * oh];
    for y in 0..oh {
        let src_row = (y / factor) * w;
        let dst_row = y * ow;
        for x in 0..ow {
            out[dst_row + x] = grid.cells()[src_row + x / factor];
        }
    }
    Ok(MaskGrid::from_parts_unchecked(ow, oh, out))
}

/// Cellular-automata mask: random coarse initialization, repeated majority
/// steps, nearest-neighbor upscale, crop to size, then dilation when the grid
/// was coarsened.
pub fn ca_mask(
    width: usize,
    height: usize,
    params: &CaParams,
    rng: &mut SeededRng,
) -> Result<MaskGrid> {
    params.validate()?;
    let d = params.downscale;
    if width < d || height < d {
        return Err(Error::ImageTooSmall {
            width,
            height,
            detail: format!("smaller than downscale factor {d}"),
        });
    }
    let cw = width.div_ceil(d);
    let ch = height.div_ceil(d);
    let mut cells = vec![0u8; cw * ch];
    for cell in &mut cells {
        *cell = u8::from(rng.gen_bool(params.init_density));
    }
    let mut grid = MaskGrid::from_parts_unchecked(cw, ch, cells);
    for _ in 0..params.steps {
        grid = ca_step(&grid);
    }
    let up = upscale_nearest(&grid, d)?;
    let mut cropped = vec![0u8; width * height];
    for y in 0..height {
        let src = y * up.width();
        cropped[y * width..(y + 1) * width].copy_from_slice(&up.cells()[src..src + width]);
    }
    let mut mask = MaskGrid::from_parts_unchecked(width, height, cropped);
    if d > 1 {
        mask = dilate(&mask, params.dilation_radius);
    }
    Ok(mask)
}

/// Free-form mask drawn as thick polyline brush strokes with disc caps,
/// clipped to the image bounds.
pub fn freeform_mask(
    width: usize,
    height: usize,
    params: &BrushParams,
    rng: &mut SeededRng,
) -> Result<MaskGrid> {
    params.validate()?;
    if width < 16 || height < 16 {
        return Err(Error::ImageTooSmall {
            width,
            height,
            detail: "free-form masks need at least 16x16".into(),
        });
    }
    let min_dim = width.min(height) as f64;
    let mut mask = MaskGrid::zeros(width, height);

    let strokes = gen_range_inclusive(rng, params.stroke_count_range);
    for _ in 0..strokes {
        let vertices = gen_range_inclusive(rng, params.vertices_per_stroke);
        let brush_radius = sample_interval(rng, params.brush_width_range) * min_dim / 2.0;
        let mut x = rng.gen_range(0.0..width as f64);
        let mut y = rng.gen_range(0.0..height as f64);
        let mut direction = rng.gen_range(0.0..std::f64::consts::TAU);
        stamp_disc(&mut mask, x, y, brush_radius);
        for _ in 0..vertices.saturating_sub(1) {
            if params.angle_jitter > 0.0 {
                direction += rng.gen_range(-params.angle_jitter..=params.angle_jitter);
            }
            let length = sample_interval(rng, params.segment_length_range) * min_dim;
            let nx = x + length * direction.cos();
            let ny = y + length * direction.sin();
            stamp_capsule(&mut mask, x, y, nx, ny, brush_radius);
            x = nx;
            y = ny;
        }
    }
    Ok(mask)
}

fn gen_range_inclusive(rng: &mut SeededRng, range: (usize, usize)) -> usize {
    if range.0 == range.1 {
        range.0
    } else {
        rng.gen_range(range.0..=range.1)
    }
}

fn sample_interval(rng: &mut SeededRng, range: (f64, f64)) -> f64 {
    if range.0 == range.1 {
        range.0
    } else {
        rng.gen_range(range.0..range.1)
    }
}

fn stamp_disc(mask: &mut MaskGrid, cx: f64, cy: f64, radius: f64) {
    stamp_capsule(mask, cx, cy, cx, cy, radius);
}

/// Set every cell whose center lies within `radius` of the segment (ax,ay)-(bx,by).
fn stamp_capsule(mask: &mut MaskGrid, ax: f64, ay: f64, bx: f64, by: f64, radius: f64) {
    let (w, h) = (mask.width(), mask.height());
    let x_lo = ((ax.min(bx) - radius).floor().max(0.0)) as usize;
    let y_lo = ((ay.min(by) - radius).floor().max(0.0)) as usize;
    let x_hi = ((ax.max(bx) + radius).ceil().min(w as f64 - 1.0)).max(0.0) as usize;
    let y_hi = ((ay.max(by) + radius).ceil().min(h as f64 - 1.0)).max(0.0) as usize;
    if x_lo > x_hi || y_lo > y_hi {
        return;
    }
    let dx = bx - ax;
    let dy = by - ay;
    let len_sq = dx * dx + dy * dy;
    let r_sq = radius * radius;
    for y in y_lo..=y_hi {
        let py = y as f64 + 0.5;
        for x in x_lo..=x_hi {
            let px = x as f64 + 0.5;
            let t = if len_sq > 0.0 {
                (((px - ax) * dx + (py - ay) * dy) / len_sq).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let ex = px - (ax + t * dx);
            let ey = py - (ay + t * dy);
            if ex * ex + ey * ey <= r_sq {
                mask.set(x, y, 1);
            }
        }
    }
}

/// Convenience dispatch used by manifests that record only (type, seed).
pub fn generate_default(
    mask_type: crate::manifest::MaskType,
    width: usize,
    height: usize,
    rng: &mut SeededRng,
) -> Result<MaskGrid> {
    match mask_type {
        crate::manifest::MaskType::Box => box_mask(width, height, &BoxParams::default(), rng),
        crate::manifest::MaskType::CellularAutomata => {
            ca_mask(width, height, &CaParams::default(), rng)
        }
        crate::manifest::MaskType::FreeForm => {
            freeform_mask(width, height, &BrushParams::default(), rng)
        }
    }
}
