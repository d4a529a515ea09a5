//! The masking algebra: ground truth -> degraded input -> composited output.

use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::mask::MaskGrid;
use crate::semantic::SemanticMap;

fn check_mask_dims(img: &ImageBuffer, mask: &MaskGrid, context: &str) -> Result<()> {
    if img.width() != mask.width() || img.height() != mask.height() {
        return Err(Error::DimensionMismatch {
            left: img.shape_string(),
            right: format!("{}x{}", mask.width(), mask.height()),
            context: context.to_owned(),
        });
    }
    Ok(())
}

/// Zero out masked pixels: input = gt * (1 - mask), per channel.
pub fn apply_mask(gt: &ImageBuffer, mask: &MaskGrid) -> Result<ImageBuffer> {
    check_mask_dims(gt, mask, "apply_mask")?;
    let channels = gt.channels();
    let mut data = gt.data().to_vec();
    for (i, &cell) in mask.cells().iter().enumerate() {
        if cell == 1 {
            data[i * channels..(i + 1) * channels].fill(0.0);
        }
    }
    Ok(ImageBuffer::from_parts_unchecked(
        gt.width(),
        gt.height(),
        channels,
        data,
    ))
}

/// Fill the holes of a degraded input from a prediction: out = input + pred * mask.
///
/// The input must be zero on masked cells; anything else signals a mis-paired
/// input/mask and is rejected.
pub fn compose_output(
    input: &ImageBuffer,
    pred: &ImageBuffer,
    mask: &MaskGrid,
) -> Result<ImageBuffer> {
    if !input.same_shape(pred) {
        return Err(Error::DimensionMismatch {
            left: input.shape_string(),
            right: pred.shape_string(),
            context: "compose_output".into(),
        });
    }
    check_mask_dims(input, mask, "compose_output")?;
    let channels = input.channels();
    let nonzero_on_mask = mask
        .cells()
        .iter()
        .enumerate()
        .filter(|&(_, &cell)| cell == 1)
        .flat_map(|(i, _)| &input.data()[i * channels..(i + 1) * channels])
        .filter(|&&v| v != 0.0)
        .count();
    if nonzero_on_mask > 0 {
        return Err(Error::InputNotZeroOnMask {
            count: nonzero_on_mask,
        });
    }
    let mut data = input.data().to_vec();
    for (i, &cell) in mask.cells().iter().enumerate() {
        if cell == 1 {
            let span = i * channels..(i + 1) * channels;
            data[span.clone()].copy_from_slice(&pred.data()[span]);
        }
    }
    Ok(ImageBuffer::from_parts_unchecked(
        input.width(),
        input.height(),
        channels,
        data,
    ))
}

/// Degraded input bundled with everything a track-1 or track-2 record needs.
#[derive(Debug, Clone, PartialEq)]
pub struct DegradedPair {
    pub input: ImageBuffer,
    pub mask: MaskGrid,
    pub semantic: Option<SemanticMap>,
}

impl DegradedPair {
    pub fn track(&self) -> u8 {
        if self.semantic.is_some() {
            2
        } else {
            1
        }
    }
}

/// Build one manifest-ready record: the masked input plus the mask, and the
/// semantic map when present (track 2).
pub fn degrade_pair(
    gt: &ImageBuffer,
    semantic: Option<&SemanticMap>,
    mask: &MaskGrid,
) -> Result<DegradedPair> {
    if let Some(sem) = semantic {
        if sem.width() != gt.width() || sem.height() != gt.height() {
            return Err(Error::DimensionMismatch {
                left: gt.shape_string(),
                right: format!("{}x{}", sem.width(), sem.height()),
                context: "degrade_pair semantic map".into(),
            });
        }
    }
    Ok(DegradedPair {
        input: apply_mask(gt, mask)?,
        mask: mask.clone(),
        semantic: semantic.cloned(),
    })
}
