//! Timings for the paths that dominate real workloads: chart construction,
//! potential evaluation, level solves, resolvent values, and the Laplace
//! integral used by the kernel-identity check.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use natanzon::green::{green_function, kernel_identity_check};
use natanzon::potential::{CoordinateMap, MapConfig, NatanzonParams};
use natanzon::spectrum::solve_level;

fn general_params() -> NatanzonParams {
    // General position: every sigma and g nonzero, two bound levels.
    NatanzonParams::new(1.0, -8.0, 0.5, 1.0, 1.0, 1.0).unwrap()
}

fn bench_map_build(c: &mut Criterion) {
    let params = general_params();
    let cfg = MapConfig::default();
    c.bench_function("coordinate_map_build", |b| {
        b.iter(|| CoordinateMap::build(black_box(&params), &cfg).unwrap())
    });
}

fn bench_potential_eval(c: &mut Criterion) {
    let params = general_params();
    let map = CoordinateMap::build(&params, &MapConfig::default()).unwrap();
    c.bench_function("potential_at_r", |b| {
        b.iter(|| map.potential_at_r(black_box(1.3)).unwrap())
    });
}

fn bench_solve_level(c: &mut Criterion) {
    let params = general_params();
    c.bench_function("solve_level_n0", |b| {
        b.iter(|| solve_level(black_box(&params), 0).unwrap())
    });
}

fn bench_green_eval(c: &mut Criterion) {
    let params = general_params();
    let map = CoordinateMap::build(&params, &MapConfig::default()).unwrap();
    let e0 = solve_level(&params, 0).unwrap().unwrap().epsilon;
    let e1 = solve_level(&params, 1).unwrap().unwrap().epsilon;
    let eps = 0.5 * (e0 + e1);
    c.bench_function("green_function", |b| {
        b.iter(|| green_function(black_box(&map), eps, 0.7, 1.4).unwrap())
    });
}

fn bench_kernel_identity(c: &mut Criterion) {
    c.bench_function("kernel_identity_quadrature", |b| {
        b.iter(|| kernel_identity_check(black_box(0.5), 1.5, 0.75, 1.0).unwrap())
    });
}

criterion_group!(
    benches,
    bench_map_build,
    bench_potential_eval,
    bench_solve_level,
    bench_green_eval,
    bench_kernel_identity
);
criterion_main!(benches);
