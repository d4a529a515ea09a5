//! PNG I/O for images, masks and semantic maps.
//!
//! Images are 8-bit grayscale or RGB PNG. Masks are 8-bit grayscale PNG with
//! 255 = masked, 0 = known; any other value is rejected. Semantic maps are
//! 8-bit grayscale PNG where the pixel value is the class id.

use std::path::Path;

use image::{DynamicImage, GrayImage, ImageReader, RgbImage};

use crate::error::{Error, Result};
use crate::image::ImageBuffer;
use crate::mask::MaskGrid;
use crate::semantic::SemanticMap;

fn decode(path: &Path) -> Result<DynamicImage> {
    let reader = ImageReader::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    reader.decode().map_err(|source| Error::Decode {
        path: path.to_owned(),
        source,
    })
}

pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    match decode(path)? {
        DynamicImage::ImageLuma8(img) => {
            let (w, h) = img.dimensions();
            ImageBuffer::from_u8(w as usize, h as usize, 1, img.as_raw())
        }
        DynamicImage::ImageRgb8(img) => {
            let (w, h) = img.dimensions();
            ImageBuffer::from_u8(w as usize, h as usize, 3, img.as_raw())
        }
        DynamicImage::ImageLuma16(_)
        | DynamicImage::ImageLumaA16(_)
        | DynamicImage::ImageRgb16(_)
        | DynamicImage::ImageRgba16(_) => Err(Error::UnsupportedBitDepth {
            path: path.to_owned(),
        }),
        _ => Err(Error::UnsupportedColorType {
            path: path.to_owned(),
        }),
    }
}

pub fn save_image(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = img.to_u8();
    let (w, h) = (img.width() as u32, img.height() as u32);
    let result = match img.channels() {
        1 => GrayImage::from_raw(w, h, bytes).expect("sized buffer").save(path),
        3 => RgbImage::from_raw(w, h, bytes).expect("sized buffer").save(path),
        _ => unreachable!("ImageBuffer enforces 1 or 3 channels"),
    };
    result.map_err(|source| Error::Encode {
        path: path.to_owned(),
        source,
    })
}

pub fn load_mask(path: impl AsRef<Path>) -> Result<MaskGrid> {
    let path = path.as_ref();
    let gray = match decode(path)? {
        DynamicImage::ImageLuma8(img) => img,
        DynamicImage::ImageLuma16(_) => {
            return Err(Error::UnsupportedBitDepth {
                path: path.to_owned(),
            })
        }
        _ => {
            return Err(Error::UnsupportedColorType {
                path: path.to_owned(),
            })
        }
    };
    let non_binary = gray.as_raw().iter().filter(|&&v| v != 0 && v != 255).count();
    if non_binary > 0 {
        return Err(Error::NonBinaryMask {
            path: path.to_owned(),
            count: non_binary,
        });
    }
    let (w, h) = gray.dimensions();
    let cells = gray.as_raw().iter().map(|&v| u8::from(v == 255)).collect();
    MaskGrid::new(w as usize, h as usize, cells)
}

pub fn save_mask(mask: &MaskGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes: Vec<u8> = mask.cells().iter().map(|&c| c * 255).collect();
    GrayImage::from_raw(mask.width() as u32, mask.height() as u32, bytes)
        .expect("sized buffer")
        .save(path)
        .map_err(|source| Error::Encode {
            path: path.to_owned(),
            source,
        })
}

pub fn load_semantic_map(path: impl AsRef<Path>) -> Result<SemanticMap> {
    let path = path.as_ref();
    let gray = match decode(path)? {
        DynamicImage::ImageLuma8(img) => img,
        DynamicImage::ImageLuma16(_) => {
            return Err(Error::UnsupportedBitDepth {
                path: path.to_owned(),
            })
        }
        _ => {
            return Err(Error::UnsupportedColorType {
                path: path.to_owned(),
            })
        }
    };
    let (w, h) = gray.dimensions();
    let labels = gray.as_raw().iter().map(|&v| u16::from(v)).collect();
    SemanticMap::new(w as usize, h as usize, labels)
}

pub fn save_semantic_map(map: &SemanticMap, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut bytes = Vec::with_capacity(map.labels().len());
    for &label in map.labels() {
        if label > 255 {
            return Err(Error::InvalidParameter {
                what: "semantic label".into(),
                detail: format!("{label} does not fit 8-bit PNG storage"),
            });
        }
        bytes.push(label as u8);
    }
    GrayImage::from_raw(map.width() as u32, map.height() as u32, bytes)
        .expect("sized buffer")
        .save(path)
        .map_err(|source| Error::Encode {
            path: path.to_owned(),
            source,
        })
}
