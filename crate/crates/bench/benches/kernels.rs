use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wgl_bench::{coordinates, points, real_matrix};
use wgl_core::interpolants::cascade::{build_cascade_plan, ultra_interpolant, Variant};
use wgl_core::riesz::{q_interpolant, riesz_product};
use wgl_core::tensor::{injective_norm_real, vector_norm, FieldMode};
use wgl_core::{fwht, DyadicDomain};

fn transform(c: &mut Criterion) {
    let mut g = c.benchmark_group("fwht");
    for n in [8, 12, 16] {
        let p = points(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| fwht(black_box(p))));
    }
    g.finish();
}

fn riesz(c: &mut Criterion) {
    let mut g = c.benchmark_group("riesz");
    for n in [8, 12] {
        let x = coordinates(n);
        g.bench_with_input(BenchmarkId::new("product", n), &x, |b, x| b.iter(|| riesz_product(black_box(x))));
        g.bench_with_input(BenchmarkId::new("q_interpolant", n), &x, |b, x| {
            b.iter(|| q_interpolant(black_box(x), 1.0, 2.0))
        });
    }
    g.finish();
}

fn injective(c: &mut Criterion) {
    let mut g = c.benchmark_group("injective_norm_real");
    g.sample_size(10);
    for r in [8, 16, 20] {
        let a = real_matrix(r, r);
        g.bench_with_input(BenchmarkId::from_parameter(r), &a, |b, a| b.iter(|| injective_norm_real(black_box(a))));
    }
    g.finish();
    let a = real_matrix(6, 6);
    c.bench_function("vector_norm/6x6", |b| b.iter(|| vector_norm(black_box(&a), 6, FieldMode::Real, 8, 1)));
}

fn cascade(c: &mut Criterion) {
    let mut g = c.benchmark_group("cascade");
    for (n, depth) in [(3, 3), (5, 2)] {
        let plan = build_cascade_plan(&DyadicDomain::new(n).unwrap(), depth, Variant::Odd).unwrap();
        let x = coordinates(n);
        g.bench_with_input(BenchmarkId::new("ultra_interpolant", format!("n{n}_d{depth}")), &x, |b, x| {
            b.iter(|| ultra_interpolant(black_box(x), &plan, 2.0))
        });
    }
    g.finish();
}

criterion_group!(benches, transform, riesz, injective, cascade);
criterion_main!(benches);
