//! Full-reference fidelity metrics (PSNR, SSIM, MAE) and per-run evaluation.
//!
//! All metrics operate on intensities in `[0, 1]`, so the PSNR data range is
//! 1.0 and the SSIM constants are the standard K1 = 0.01, K2 = 0.03 ones.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::degrade::apply_mask;
use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::io::{load_image, load_mask};
use crate::manifest::{resolve_path, MaskAssignment, MaskType, RunManifest};
use crate::mask::MaskGrid;
use crate::maskgen::generate_default;
use crate::rng::SeededRng;

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
const SSIM_C1: f64 = 0.01 * 0.01;
const SSIM_C2: f64 = 0.03 * 0.03;

fn check_same_shape(a: &ImageBuffer, b: &ImageBuffer, context: &str) -> Result<()> {
    if !a.same_shape(b) {
        return Err(Error::DimensionMismatch {
            left: a.shape_string(),
            right: b.shape_string(),
            context: context.to_owned(),
        });
    }
    Ok(())
}

/// Mean absolute error over all pixels and channels.
pub fn mae(a: &ImageBuffer, b: &ImageBuffer) -> Result<f64> {
    check_same_shape(a, b, "mae")?;
    let sum: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).abs())
        .sum();
    Ok(sum / a.data().len() as f64)
}

/// Peak signal-to-noise ratio in dB, data range 1.0. Identical images give
/// `f64::INFINITY` as the perfect-score sentinel.
pub fn psnr(a: &ImageBuffer, b: &ImageBuffer) -> Result<f64> {
    check_same_shape(a, b, "psnr")?;
    let sum_sq: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    let mse = sum_sq / a.data().len() as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (1.0 / mse).log10())
}

/// Rec. 601 luma weights, applied before SSIM on RGB input.
pub fn to_luma(img: &ImageBuffer) -> Vec<f64> {
    match img.channels() {
        1 => img.data().to_vec(),
        3 => img
            .data()
            .chunks_exact(3)
            .map(|p| 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2])
            .collect(),
        _ => unreachable!(),
    }
}

pub fn gaussian_kernel(window: usize, sigma: f64) -> Vec<f64> {
    let half = (window / 2) as isize;
    let mut kernel: Vec<f64> = (-half..=half)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = kernel.iter().sum();
    for k in &mut kernel {
        *k /= total;
    }
    kernel
}

/// Separable Gaussian blur with replicate padding.
fn gaussian_blur(plane: &[f64], w: usize, h: usize, kernel: &[f64]) -> Vec<f64> {
    let half = (kernel.len() / 2) as isize;
    let mut horiz = vec![0.0; w * h];
    for y in 0..h {
        let row = &plane[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = 0.0;
            for (ki, &k) in kernel.iter().enumerate() {
                let xx = (x as isize + ki as isize - half).clamp(0, w as isize - 1) as usize;
                acc += k * row[xx];
            }
            horiz[y * w + x] = acc;
        }
    }
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (ki, &k) in kernel.iter().enumerate() {
                let yy = (y as isize + ki as isize - half).clamp(0, h as isize - 1) as usize;
                acc += k * horiz[yy * w + x];
            }
            out[y * w + x] = acc;
        }
    }
    out
}

/// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// replicate padding, computed on luma.
pub fn ssim(a: &ImageBuffer, b: &ImageBuffer) -> Result<f64> {
    check_same_shape(a, b, "ssim")?;
    let (w, h) = (a.width(), a.height());
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            detail: format!("ssim needs at least {SSIM_WINDOW}x{SSIM_WINDOW}"),
        });
    }
    let x = to_luma(a);
    let y = to_luma(b);
    let kernel = gaussian_kernel(SSIM_WINDOW, SSIM_SIGMA);

    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(&y).map(|(u, v)| u * v).collect();

    let mu_x = gaussian_blur(&x, w, h, &kernel);
    let mu_y = gaussian_blur(&y, w, h, &kernel);
    let m_xx = gaussian_blur(&xx, w, h, &kernel);
    let m_yy = gaussian_blur(&yy, w, h, &kernel);
    let m_xy = gaussian_blur(&xy, w, h, &kernel);

    let mut total = 0.0;
    for i in 0..w * h {
        let mx = mu_x[i];
        let my = mu_y[i];
        let var_x = m_xx[i] - mx * mx;
        let var_y = m_yy[i] - my * my;
        let cov = m_xy[i] - mx * my;
        total += ((2.0 * mx * my + SSIM_C1) * (2.0 * cov + SSIM_C2))
            / ((mx * mx + my * my + SSIM_C1) * (var_x + var_y + SSIM_C2));
    }
    Ok(total / (w * h) as f64)
}

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
    /// Non-finite values (perfect-score PSNR sentinels) left out of the mean.
    pub excluded: usize,
}

/// Aggregate finite values; infinite sentinels are excluded and counted.
pub fn aggregate(values: &[f64]) -> Result<AggregateStats> {
    if values.is_empty() {
        return Err(Error::EmptyInput {
            context: "aggregate".into(),
        });
    }
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let excluded = values.len() - finite.len();
    if finite.is_empty() {
        return Err(Error::EmptyInput {
            context: format!("aggregate: all {excluded} values were non-finite"),
        });
    }
    let n = finite.len();
    let mean = finite.iter().sum::<f64>() / n as f64;
    let var = finite.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
    Ok(AggregateStats {
        mean,
        std: var.sqrt(),
        n,
        excluded,
    })
}

/// Per-image metric values plus mask metadata; the analysis atom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub image_id: String,
    pub mask_type: MaskType,
    pub missing_fraction: f64,
    pub psnr: f64,
    pub ssim: f64,
    pub mae: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub plugin_values: BTreeMap<String, f64>,
}

/// Result of scoring one run: records ordered by image id, plus the ids whose
/// output file was absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationOutcome {
    pub records: Vec<MetricRecord>,
    pub missing_outputs: Vec<String>,
}

/// Resolve an assignment to a concrete mask, loading the stored file when
/// present and otherwise regenerating from the recorded seed.
pub fn resolve_mask(
    assignment: &MaskAssignment,
    root: &Path,
    width: usize,
    height: usize,
) -> Result<MaskGrid> {
    if let Some(path) = &assignment.mask_path {
        return load_mask(resolve_path(root, path));
    }
    let seed = assignment.seed.ok_or_else(|| Error::InvalidManifest {
        detail: format!(
            "assignment for '{}' has neither mask path nor seed",
            assignment.image_id
        ),
    })?;
    generate_default(
        assignment.mask_type,
        width,
        height,
        &mut SeededRng::new(seed),
    )
}

fn score_one(
    manifest: &RunManifest,
    root: &Path,
    outputs_dir: &Path,
    id: &str,
) -> Result<Option<MetricRecord>> {
    let entry = manifest.image(id).expect("id from manifest");
    let assignment = manifest.assignment(id).ok_or_else(|| Error::InvalidManifest {
        detail: format!("image '{id}' has no mask assignment"),
    })?;
    let output_path = outputs_dir.join(format!("{id}.png"));
    if !output_path.exists() {
        return Ok(None);
    }
    let gt = load_image(resolve_path(root, &entry.image))?;
    let output = load_image(&output_path)?;
    check_same_shape(&gt, &output, &format!("evaluate image '{id}'"))?;
    let mask = resolve_mask(assignment, root, gt.width(), gt.height())?;
    Ok(Some(MetricRecord {
        image_id: id.to_owned(),
        mask_type: assignment.mask_type,
        missing_fraction: mask.missing_fraction(),
        psnr: psnr(&gt, &output)?,
        ssim: ssim(&gt, &output)?,
        mae: mae(&gt, &output)?,
        plugin_values: BTreeMap::new(),
    }))
}

/// Score every manifest image against `outputs_dir/<id>.png`. Missing outputs
/// are reported and skipped; any other failure aborts with the image named.
pub fn evaluate_run(
    manifest: &RunManifest,
    root: &Path,
    outputs_dir: &Path,
) -> Result<EvaluationOutcome> {
    manifest.validate()?;
    let mut ids: Vec<&str> = manifest.images.iter().map(|e| e.id.as_str()).collect();
    ids.sort_unstable();
    let mut records = Vec::new();
    let mut missing_outputs = Vec::new();
    for id in ids {
        match score_one(manifest, root, outputs_dir, id)? {
            Some(record) => records.push(record),
            None => missing_outputs.push(id.to_owned()),
        }
    }
    Ok(EvaluationOutcome {
        records,
        missing_outputs,
    })
}

/// Metrics of the degraded input itself against ground truth, per image.
pub fn masked_baseline_records(manifest: &RunManifest, root: &Path) -> Result<Vec<MetricRecord>> {
    manifest.validate()?;
    let mut ids: Vec<&str> = manifest.images.iter().map(|e| e.id.as_str()).collect();
    ids.sort_unstable();
    let mut records = Vec::new();
    for id in ids {
        let entry = manifest.image(id).expect("id from manifest");
        let assignment = manifest.assignment(id).ok_or_else(|| Error::InvalidManifest {
            detail: format!("image '{id}' has no mask assignment"),
        })?;
        let gt = load_image(resolve_path(root, &entry.image))?;
        let mask = resolve_mask(assignment, root, gt.width(), gt.height())?;
        let degraded = apply_mask(&gt, &mask)?;
        records.push(MetricRecord {
            image_id: id.to_owned(),
            mask_type: assignment.mask_type,
            missing_fraction: mask.missing_fraction(),
            psnr: psnr(&gt, &degraded)?,
            ssim: ssim(&gt, &degraded)?,
            mae: mae(&gt, &degraded)?,
            plugin_values: BTreeMap::new(),
        });
    }
    Ok(records)
}
