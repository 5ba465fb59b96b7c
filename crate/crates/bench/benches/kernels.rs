use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pseudolab::numkernel::{smallest_singular_value, sv2x2, ComplexMatrix, LuFactors};
use pseudolab::resolvent::{block2_value, dense_resolvent_norm};
use pseudolab::setgeom::{hausdorff_distance, MaskSet};
use pseudolab::Complex64;

fn dense(n: usize) -> ComplexMatrix {
    // deterministic, well-conditioned, non-normal
    ComplexMatrix::from_fn(n, n, |i, j| {
        let t = (i * 31 + j * 17) as f64;
        let base = Complex64::new((t * 0.37).sin(), (t * 0.11).cos()) * 0.3;
        if i == j {
            base + Complex64::new(3.0, 0.0)
        } else {
            base
        }
    })
}

fn kernels(c: &mut Criterion) {
    let m2 = ComplexMatrix::from_real_rows(&[&[0.0, 1.5], &[2.0, 0.0]]);
    c.bench_function("sv2x2", |b| b.iter(|| sv2x2(black_box(&m2))));
    c.bench_function("block2_value", |b| b.iter(|| block2_value(black_box(40.0), 1.025, Complex64::new(0.3, 0.2), 0)));

    let mut g = c.benchmark_group("dense");
    for n in [8, 32, 96] {
        let m = dense(n);
        g.bench_with_input(BenchmarkId::new("lu", n), &m, |b, m| b.iter(|| LuFactors::factor(m)));
        g.bench_with_input(BenchmarkId::new("sigma_min", n), &m, |b, m| b.iter(|| smallest_singular_value(m)));
        g.bench_with_input(BenchmarkId::new("resolvent_norm", n), &m, |b, m| {
            b.iter(|| dense_resolvent_norm(m, Complex64::new(0.5, 0.5)))
        });
    }
    g.finish();

    let pts = |n: usize, shift: f64| {
        MaskSet::from_points(
            (0..n).map(|i| Complex64::new((i as f64 * 0.618).fract() * 4.0 + shift, (i as f64 * 0.414).fract() * 3.0)).collect(),
        )
    };
    let mut g = c.benchmark_group("hausdorff");
    for n in [1_000, 20_000] {
        let (a, b) = (pts(n, 0.0), pts(n, 0.05));
        g.bench_function(BenchmarkId::from_parameter(n), |bn| bn.iter(|| hausdorff_distance(&a, &b)));
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
