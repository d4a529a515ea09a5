//! Independent brute-force reference implementations, checked against the
//! optimized paths.

use rand::Rng;

use inpaintbench_core::dataset::{compute_class_stats, select_classes, ClassStats};
use inpaintbench_core::maskgen::{ca_step, dilate};
use inpaintbench_core::metrics::{
    aggregate, gaussian_kernel, mae, psnr, ssim, to_luma, SSIM_SIGMA, SSIM_WINDOW,
};
use inpaintbench_core::{ImageBuffer, MaskGrid, SeededRng, SemanticMap};

fn random_grid(rng: &mut SeededRng, w: usize, h: usize) -> MaskGrid {
    let cells = (0..w * h).map(|_| rng.gen_range(0..=1u8)).collect();
    MaskGrid::new(w, h, cells).unwrap()
}

fn random_image(rng: &mut SeededRng, w: usize, h: usize, c: usize) -> ImageBuffer {
    let data = (0..w * h * c).map(|_| rng.gen_range(0.0..1.0)).collect();
    ImageBuffer::new(w, h, c, data).unwrap()
}

/// Per-cell 9-vote count with replicate padding, no shortcuts.
fn ca_step_oracle(grid: &MaskGrid) -> MaskGrid {
    let (w, h) = (grid.width() as isize, grid.height() as isize);
    let mut cells = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            let mut ones = 0;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let xx = (x + dx).clamp(0, w - 1) as usize;
                    let yy = (y + dy).clamp(0, h - 1) as usize;
                    ones += grid.get(xx, yy);
                }
            }
            cells.push(u8::from(ones >= 5));
        }
    }
    MaskGrid::new(grid.width(), grid.height(), cells).unwrap()
}

/// O(n * r^2) per-cell window scan.
fn dilate_oracle(grid: &MaskGrid, radius: usize) -> MaskGrid {
    let (w, h) = (grid.width() as isize, grid.height() as isize);
    let r = radius as isize;
    let mut cells = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            let mut hit = 0u8;
            for dy in -r..=r {
                for dx in -r..=r {
                    let xx = x + dx;
                    let yy = y + dy;
                    if xx >= 0 && xx < w && yy >= 0 && yy < h && grid.get(xx as usize, yy as usize) == 1
                    {
                        hit = 1;
                    }
                }
            }
            cells.push(hit);
        }
    }
    MaskGrid::new(grid.width(), grid.height(), cells).unwrap()
}

#[test]
fn ca_step_matches_oracle_on_random_grids() {
    let mut rng = SeededRng::new(100);
    for case in 0..10_000 {
        let w = rng.gen_range(1..=16);
        let h = rng.gen_range(1..=16);
        let grid = random_grid(&mut rng, w, h);
        assert_eq!(ca_step(&grid), ca_step_oracle(&grid), "case {case} ({w}x{h})");
    }
}

#[test]
fn dilate_matches_oracle() {
    let mut rng = SeededRng::new(101);
    for case in 0..200 {
        let grid = random_grid(&mut rng, 32, 32);
        for radius in [0, 1, 2, 5] {
            assert_eq!(
                dilate(&grid, radius),
                dilate_oracle(&grid, radius),
                "case {case} radius {radius}"
            );
        }
    }
}

fn mae_oracle(a: &ImageBuffer, b: &ImageBuffer) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for y in 0..a.height() {
        for x in 0..a.width() {
            for c in 0..a.channels() {
                sum += (a.get(x, y, c) - b.get(x, y, c)).abs();
                n += 1;
            }
        }
    }
    sum / n as f64
}

fn psnr_oracle(a: &ImageBuffer, b: &ImageBuffer) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for y in 0..a.height() {
        for x in 0..a.width() {
            for c in 0..a.channels() {
                let d = a.get(x, y, c) - b.get(x, y, c);
                sum += d * d;
                n += 1;
            }
        }
    }
    let mse = sum / n as f64;
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (1.0 / mse).log10()
    }
}

/// Direct per-window SSIM with the same 11x11 Gaussian and replicate padding.
fn ssim_oracle(a: &ImageBuffer, b: &ImageBuffer) -> f64 {
    let (w, h) = (a.width(), a.height());
    let x = to_luma(a);
    let y = to_luma(b);
    let taps = gaussian_kernel(SSIM_WINDOW, SSIM_SIGMA);
    let half = (SSIM_WINDOW / 2) as isize;
    let c1 = 0.01f64 * 0.01;
    let c2 = 0.03f64 * 0.03;
    let mut total = 0.0;
    for cy in 0..h as isize {
        for cx in 0..w as isize {
            let mut mu_x = 0.0;
            let mut mu_y = 0.0;
            let mut xx = 0.0;
            let mut yy = 0.0;
            let mut xy = 0.0;
            for ky in -half..=half {
                for kx in -half..=half {
                    let weight = taps[(ky + half) as usize] * taps[(kx + half) as usize];
                    let sx = (cx + kx).clamp(0, w as isize - 1) as usize;
                    let sy = (cy + ky).clamp(0, h as isize - 1) as usize;
                    let vx = x[sy * w + sx];
                    let vy = y[sy * w + sx];
                    mu_x += weight * vx;
                    mu_y += weight * vy;
                    xx += weight * vx * vx;
                    yy += weight * vy * vy;
                    xy += weight * vx * vy;
                }
            }
            let var_x = xx - mu_x * mu_x;
            let var_y = yy - mu_y * mu_y;
            let cov = xy - mu_x * mu_y;
            total += ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2))
                / ((mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2));
        }
    }
    total / (w * h) as f64
}

#[test]
fn mae_matches_flat_loop_oracle() {
    let mut rng = SeededRng::new(102);
    for _ in 0..20 {
        let a = random_image(&mut rng, 64, 64, 3);
        let b = random_image(&mut rng, 64, 64, 3);
        assert!((mae(&a, &b).unwrap() - mae_oracle(&a, &b)).abs() < 1e-12);
    }
}

#[test]
fn psnr_matches_flat_loop_oracle() {
    let mut rng = SeededRng::new(103);
    for _ in 0..20 {
        let a = random_image(&mut rng, 64, 64, 1);
        let b = random_image(&mut rng, 64, 64, 1);
        assert!((psnr(&a, &b).unwrap() - psnr_oracle(&a, &b)).abs() < 1e-9);
    }
}

#[test]
fn ssim_matches_naive_reference() {
    let mut rng = SeededRng::new(104);
    for case in 0..20 {
        let channels = if case % 2 == 0 { 1 } else { 3 };
        let a = random_image(&mut rng, 64, 64, channels);
        let b = random_image(&mut rng, 64, 64, channels);
        let fast = ssim(&a, &b).unwrap();
        let slow = ssim_oracle(&a, &b);
        assert!(
            (fast - slow).abs() < 1e-6,
            "case {case}: {fast} vs {slow}"
        );
    }
}

#[test]
fn aggregate_matches_two_pass_oracle() {
    let mut rng = SeededRng::new(105);
    let values: Vec<f64> = (0..1000).map(|_| rng.gen_range(0.0..100.0)).collect();
    let stats = aggregate(&values).unwrap();
    let mean: f64 = values.iter().sum::<f64>() / values.len() as f64;
    let var: f64 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
    assert!((stats.mean - mean).abs() < 1e-12);
    assert!((stats.std - var.sqrt()).abs() < 1e-12);
}

#[test]
fn class_stats_match_recount_oracle() {
    let mut rng = SeededRng::new(106);
    let maps: Vec<SemanticMap> = (0..50)
        .map(|_| {
            let w = rng.gen_range(2..=8);
            let h = rng.gen_range(2..=8);
            let labels = (0..w * h).map(|_| rng.gen_range(0..6u16)).collect();
            SemanticMap::new(w, h, labels).unwrap()
        })
        .collect();
    let stats = compute_class_stats(maps.iter());

    // Independent recount: per class, scan every map from scratch.
    for class in 0u16..6 {
        let image_count = maps
            .iter()
            .filter(|m| m.labels().contains(&class))
            .count();
        let pixel_count: u64 = maps
            .iter()
            .map(|m| m.labels().iter().filter(|&&l| l == class).count() as u64)
            .sum();
        let counted = stats.per_class.get(&class).copied().unwrap_or_default();
        if pixel_count == 0 {
            assert!(!stats.per_class.contains_key(&class));
        } else {
            assert_eq!(counted.image_count, image_count, "class {class}");
            assert_eq!(counted.pixel_count, pixel_count, "class {class}");
        }
    }
    assert_eq!(stats.total_images, 50);
}

#[test]
fn select_classes_fixture_union_of_five() {
    // Image ranking: 10 > 11 > 12 > rest; pixel ranking: 20 > 21 > 12 > rest.
    // k_image = 3 picks {10, 11, 12}; k_pixel = 3 picks {20, 21, 12}.
    let mut stats = ClassStats::default();
    let add = |stats: &mut ClassStats, class: u16, images: usize, pixels: u64| {
        stats.per_class.insert(
            class,
            inpaintbench_core::dataset::ClassCount {
                image_count: images,
                pixel_count: pixels,
            },
        );
    };
    add(&mut stats, 10, 90, 10);
    add(&mut stats, 11, 80, 20);
    add(&mut stats, 12, 70, 700);
    add(&mut stats, 20, 5, 900);
    add(&mut stats, 21, 6, 800);
    add(&mut stats, 30, 1, 1);
    let selected = select_classes(&stats, 3, 3).unwrap();
    let expected: std::collections::BTreeSet<u16> = [10, 11, 12, 20, 21].into_iter().collect();
    assert_eq!(selected, expected);
    assert_eq!(selected.len(), 5);
}
