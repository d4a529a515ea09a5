use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use inpaintbench_bench::random_grid;
use inpaintbench_core::maskgen::{
    box_mask, ca_mask, ca_step, dilate, freeform_mask, BoxParams, BrushParams, CaParams,
};
use inpaintbench_core::SeededRng;

fn bench_ca_step(c: &mut Criterion) {
    let grid = random_grid(256, 256, 1);
    c.bench_function("ca_step 256x256", |b| b.iter(|| ca_step(black_box(&grid))));
}

fn bench_dilate(c: &mut Criterion) {
    let grid = random_grid(256, 256, 2);
    c.bench_function("dilate r=2 256x256", |b| {
        b.iter(|| dilate(black_box(&grid), 2))
    });
}

fn bench_generators(c: &mut Criterion) {
    c.bench_function("box_mask 512x512", |b| {
        let mut rng = SeededRng::new(3);
        b.iter(|| box_mask(512, 512, &BoxParams::default(), &mut rng).unwrap())
    });
    c.bench_function("ca_mask 512x512", |b| {
        let mut rng = SeededRng::new(4);
        b.iter(|| ca_mask(512, 512, &CaParams::default(), &mut rng).unwrap())
    });
    c.bench_function("freeform_mask 512x512", |b| {
        let mut rng = SeededRng::new(5);
        b.iter(|| freeform_mask(512, 512, &BrushParams::default(), &mut rng).unwrap())
    });
}

criterion_group!(benches, bench_ca_step, bench_dilate, bench_generators);
criterion_main!(benches);
