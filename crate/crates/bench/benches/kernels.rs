use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use dunkl_a2::bessel;
use dunkl_a2::kernels;
use dunkl_a2::poly_oracle::{kernel_series, rat};
use dunkl_a2::quadrature::gauss_jacobi;
use dunkl_a2::types::{BesselOrder, ChamberPoint, MultiplicityParam, Point3};

fn bench_rule_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_jacobi_build");
    for &n in &[32usize, 64, 128] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| gauss_jacobi(black_box(n), -0.5, -0.5, -1.0, 1.0).unwrap())
        });
    }
    group.finish();
}

fn bench_bessel_series(c: &mut Criterion) {
    let order = BesselOrder::new(0.75).unwrap();
    c.bench_function("bessel_series_z10", |b| {
        b.iter(|| bessel::bessel_j(order, black_box(10.0)).unwrap())
    });
}

fn bench_kernel_evaluation(c: &mut Criterion) {
    let lam = ChamberPoint::new(1.5, 0.2, -1.7).unwrap();
    let mu = Point3::new(0.8, 0.1, -0.9).unwrap();
    let mut group = c.benchmark_group("dunkl_e");
    for &n in &[32usize, 64] {
        for &k in &[0.5, 1.0] {
            let km = MultiplicityParam::new(k).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("k_{k}"), n), &n, |b, &n| {
                b.iter(|| kernels::dunkl_e(km, &mu, &lam, black_box(n)).unwrap())
            });
        }
    }
    group.finish();

    let km = MultiplicityParam::new(0.5).unwrap();
    c.bench_function("gen_bessel_j_n64", |b| {
        b.iter(|| kernels::gen_bessel_j(km, &mu, &lam, black_box(64)).unwrap())
    });
}

fn bench_density(c: &mut Criterion) {
    let lam = ChamberPoint::new(1.0, 0.0, -1.0).unwrap();
    let km = MultiplicityParam::new(0.5).unwrap();
    c.bench_function("density_f_n32", |b| {
        b.iter(|| kernels::density_f(km, black_box(0.2), black_box(0.1), &lam, 32).unwrap())
    });
}

fn bench_series_build(c: &mut Criterion) {
    c.bench_function("kernel_series_degree8", |b| {
        b.iter(|| kernel_series(&rat(1, 2), black_box(8)))
    });
}

criterion_group!(
    benches,
    bench_rule_construction,
    bench_bessel_series,
    bench_kernel_evaluation,
    bench_density,
    bench_series_build
);
criterion_main!(benches);
