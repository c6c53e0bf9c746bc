use criterion::{criterion_group, criterion_main, Criterion};
use polyfourier::curves::builtin_curve;
use polyfourier::experiments::{circle_scan, curve_scan, l_shape, pompeiu_demo, unit_square, DemoConfig};
use polyfourier::{Complex64, ComplexCircle};

fn scans(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    let circle = ComplexCircle::centered(2, Complex64::new(0.5, 0.0)).unwrap();
    let (square, l) = (unit_square(), l_shape());
    g.bench_function("square_circle_4096", |b| b.iter(|| circle_scan(&square, &circle, 4096).unwrap()));
    g.bench_function("l_shape_circle_4096", |b| b.iter(|| circle_scan(&l, &circle, 4096).unwrap()));
    let t2 = builtin_curve("t2_sin").unwrap();
    g.bench_function("square_t2_sin_2048", |b| b.iter(|| curve_scan(&square, &t2, 2048).unwrap()));
    g.bench_function("pompeiu_demo", |b| b.iter(|| pompeiu_demo(&square, "square", &DemoConfig::default()).unwrap()));
    g.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
