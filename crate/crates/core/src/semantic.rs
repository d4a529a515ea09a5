use crate::error::{Error, Result};

/// Reserved class id assigned to labels a mapping does not cover.
pub const UNMAPPED_LABEL: u16 = u16::MAX;

/// Per-pixel semantic class identifiers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticMap {
    width: usize,
    height: usize,
    labels: Vec<u16>,
}

impl SemanticMap {
    pub fn new(width: usize, height: usize, labels: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter {
                what: "semantic map dimensions".into(),
                detail: format!("{width}x{height}"),
            });
        }
        if labels.len() != width * height {
            return Err(Error::InvalidParameter {
                what: "semantic label count".into(),
                detail: format!("{} (expected {})", labels.len(), width * height),
            });
        }
        Ok(Self {
            width,
            height,
            labels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }
}
