//! Shared helpers for the criterion benchmarks.

use rand::Rng;

use inpaintbench_core::{ImageBuffer, MaskGrid, SeededRng};

pub fn random_grid(width: usize, height: usize, seed: u64) -> MaskGrid {
    let mut rng = SeededRng::new(seed);
    let cells = (0..width * height).map(|_| rng.gen_range(0..=1u8)).collect();
    MaskGrid::new(width, height, cells).unwrap()
}

pub fn random_image(width: usize, height: usize, channels: usize, seed: u64) -> ImageBuffer {
    let mut rng = SeededRng::new(seed);
    let data = (0..width * height * channels)
        .map(|_| rng.gen_range(0.0..1.0))
        .collect();
    ImageBuffer::new(width, height, channels, data).unwrap()
}
