//! Frozen-fixture tests: seeded generator outputs must stay cell-identical
//! across releases and platforms.
//!
//! Regenerate the fixtures with `INPAINTBENCH_REGEN_FIXTURES=1 cargo test`
//! after an intentional generator change.

use std::path::{Path, PathBuf};

use inpaintbench_core::degrade::apply_mask;
use inpaintbench_core::io::{load_image, load_mask, save_image, save_mask};
use inpaintbench_core::maskgen::{
    box_mask, ca_mask, freeform_mask, BoxParams, BrushParams, CaParams,
};
use inpaintbench_core::{ImageBuffer, MaskGrid, SeededRng};

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn regen() -> bool {
    std::env::var_os("INPAINTBENCH_REGEN_FIXTURES").is_some()
}

fn check_mask_fixture(mask: &MaskGrid, name: &str) {
    let path = fixture_path(name);
    if regen() {
        save_mask(mask, &path).unwrap();
        return;
    }
    let frozen = load_mask(&path).unwrap();
    assert_eq!(mask, &frozen, "{name} drifted from frozen fixture");
}

#[test]
fn box_mask_seed42_is_frozen() {
    let mask = box_mask(100, 100, &BoxParams::default(), &mut SeededRng::new(42)).unwrap();
    check_mask_fixture(&mask, "box_seed42_100x100.png");
}

#[test]
fn ca_mask_seed7_is_frozen() {
    let mask = ca_mask(256, 256, &CaParams::default(), &mut SeededRng::new(7)).unwrap();
    let fraction = mask.missing_fraction();
    assert!(
        (0.2..=0.8).contains(&fraction),
        "missing fraction {fraction} outside sanity band"
    );
    check_mask_fixture(&mask, "ca_seed7_256x256.png");
}

#[test]
fn freeform_mask_seed11_is_frozen() {
    let mask = freeform_mask(256, 256, &BrushParams::default(), &mut SeededRng::new(11)).unwrap();
    check_mask_fixture(&mask, "freeform_seed11_256x256.png");
}

/// Deterministic synthetic ground truth used by the degraded-image fixture.
fn gradient_image(w: usize, h: usize) -> ImageBuffer {
    let mut bytes = Vec::with_capacity(w * h * 3);
    for y in 0..h {
        for x in 0..w {
            bytes.push((x * 255 / (w - 1)) as u8);
            bytes.push((y * 255 / (h - 1)) as u8);
            bytes.push(((x + y) * 255 / (w + h - 2)) as u8);
        }
    }
    ImageBuffer::from_u8(w, h, 3, &bytes).unwrap()
}

#[test]
fn degraded_pair_is_frozen() {
    let gt = gradient_image(32, 32);
    let mask = box_mask(32, 32, &BoxParams::default(), &mut SeededRng::new(5)).unwrap();
    let degraded = apply_mask(&gt, &mask).unwrap();
    let path = fixture_path("degraded_box_seed5_32x32.png");
    if regen() {
        save_image(&degraded, &path).unwrap();
        return;
    }
    let frozen = load_image(&path).unwrap();
    assert_eq!(degraded, frozen, "degraded image drifted from fixture");
    // Byte-identical encoding as well, not just equal pixels.
    let tmp = tempfile::tempdir().unwrap();
    let rewritten = tmp.path().join("degraded.png");
    save_image(&degraded, &rewritten).unwrap();
    assert_eq!(
        std::fs::read(&rewritten).unwrap(),
        std::fs::read(&path).unwrap()
    );
}
