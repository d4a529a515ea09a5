use crate::error::{Error, Result};

/// Binary degradation mask. Cell value 1 = masked/unknown, 0 = known.
///
/// The polarity is fixed project-wide; on disk 1 maps to pixel value 255.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskGrid {
    width: usize,
    height: usize,
    cells: Vec<u8>,
}

impl MaskGrid {
    pub fn new(width: usize, height: usize, cells: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter {
                what: "mask dimensions".into(),
                detail: format!("{width}x{height}"),
            });
        }
        if cells.len() != width * height {
            return Err(Error::InvalidParameter {
                what: "mask cell count".into(),
                detail: format!("{} (expected {})", cells.len(), width * height),
            });
        }
        if cells.iter().any(|&c| c > 1) {
            return Err(Error::InvalidParameter {
                what: "mask cell value".into(),
                detail: "cells must be 0 or 1".into(),
            });
        }
        Ok(Self {
            width,
            height,
            cells,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            cells: vec![0; width * height],
        }
    }

    pub fn ones(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            cells: vec![1; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        debug_assert!(x < self.width && y < self.height);
        self.cells[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        debug_assert!(v <= 1);
        self.cells[y * self.width + x] = v;
    }

    /// Masked cells divided by total cells.
    pub fn missing_fraction(&self) -> f64 {
        let ones: usize = self.cells.iter().map(|&c| c as usize).sum();
        ones as f64 / (self.width * self.height) as f64
    }

    pub(crate) fn from_parts_unchecked(width: usize, height: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), width * height);
        Self {
            width,
            height,
            cells,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_cells() {
        assert!(MaskGrid::new(2, 2, vec![0, 1, 1, 0]).is_ok());
        assert!(MaskGrid::new(2, 2, vec![0, 1, 2, 0]).is_err());
        assert!(MaskGrid::new(2, 2, vec![0, 1]).is_err());
    }

    #[test]
    fn missing_fraction_counts_ones() {
        assert_eq!(MaskGrid::ones(4, 4).missing_fraction(), 1.0);
        assert_eq!(MaskGrid::zeros(4, 4).missing_fraction(), 0.0);
        let m = MaskGrid::new(2, 2, vec![1, 0, 0, 0]).unwrap();
        assert_eq!(m.missing_fraction(), 0.25);
    }
}
