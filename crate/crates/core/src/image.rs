use crate::error::{Error, Result};

/// An image as row-major intensities in `[0, 1]`, 1 (gray) or 3 (RGB) channels.
///
/// Intensities come from 8-bit storage via `v / 255`; quantizing back with
/// `round(v * 255)` is the exact inverse on values that originated that way.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl ImageBuffer {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter {
                what: "image dimensions".into(),
                detail: format!("{width}x{height}"),
            });
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidParameter {
                what: "channel count".into(),
                detail: format!("{channels} (expected 1 or 3)"),
            });
        }
        if data.len() != width * height * channels {
            return Err(Error::InvalidParameter {
                what: "image data length".into(),
                detail: format!(
                    "{} (expected {} for {width}x{height}x{channels})",
                    data.len(),
                    width * height * channels
                ),
            });
        }
        if let Some(v) = data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter {
                what: "intensity".into(),
                detail: format!("{v} outside [0, 1]"),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn from_u8(width: usize, height: usize, channels: usize, bytes: &[u8]) -> Result<Self> {
        let data = bytes.iter().map(|&b| f64::from(b) / 255.0).collect();
        Self::new(width, height, channels, data)
    }

    /// Quantize back to 8-bit storage by `round(v * 255)`.
    pub fn to_u8(&self) -> Vec<u8> {
        self.data
            .iter()
            .map(|v| (v * 255.0).round() as u8)
            .collect()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize, c: usize) -> f64 {
        debug_assert!(x < self.width && y < self.height && c < self.channels);
        self.data[(y * self.width + x) * self.channels + c]
    }

    pub fn same_shape(&self, other: &ImageBuffer) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.channels == other.channels
    }

    pub fn shape_string(&self) -> String {
        format!("{}x{}x{}", self.width, self.height, self.channels)
    }

    pub(crate) fn from_parts_unchecked(
        width: usize,
        height: usize,
        channels: usize,
        data: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(data.len(), width * height * channels);
        Self {
            width,
            height,
            channels,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(ImageBuffer::new(0, 4, 1, vec![]).is_err());
        assert!(ImageBuffer::new(2, 2, 2, vec![0.0; 8]).is_err());
        assert!(ImageBuffer::new(2, 2, 1, vec![0.0; 3]).is_err());
        assert!(ImageBuffer::new(2, 2, 1, vec![0.0, 0.5, 1.0, 1.1]).is_err());
    }

    #[test]
    fn from_u8_normalizes() {
        let img = ImageBuffer::from_u8(2, 2, 1, &[0, 255, 128, 64]).unwrap();
        assert_eq!(
            img.data(),
            &[0.0, 1.0, 128.0 / 255.0, 64.0 / 255.0]
        );
        assert_eq!(img.to_u8(), vec![0, 255, 128, 64]);
    }
}
