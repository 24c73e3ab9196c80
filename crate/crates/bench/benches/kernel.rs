use std::hint::black_box;

use admissible::groebner::groebner;
use admissible::homological::fitting;
use admissible::{free_resolution, hilbert, run_tower, ModulePresentation};
use admissible_bench::{point_ideal, polys, ring};
use criterion::{criterion_group, criterion_main, Criterion};

fn groebner_bases(c: &mut Criterion) {
    let r = ring(&["x", "y", "z", "w"]);
    let cyclic = polys(&r, &["x + y + z + w", "x*y + y*z + z*w + w*x", "x*y*z + y*z*w + z*w*x + w*x*y", "x*y*z*w - 1"]);
    c.bench_function("groebner/cyclic4", |b| b.iter(|| groebner(black_box(&cyclic)).unwrap()));
    let twisted = polys(&r, &["x^2 - y*w", "x*y - z*w", "y^2 - x*z"]);
    c.bench_function("groebner/twisted_cubic", |b| b.iter(|| groebner(black_box(&twisted)).unwrap()));
}

fn resolutions(c: &mut Criterion) {
    let m = point_ideal(4);
    c.bench_function("resolution/space_point", |b| b.iter(|| free_resolution(black_box(&m), true).unwrap()));
    let r = ring(&["x", "y", "z"]);
    let q = ModulePresentation::cyclic(&r, &polys(&r, &["x^2", "x*y", "y^3"])).unwrap();
    c.bench_function("resolution/monomial_quotient", |b| b.iter(|| free_resolution(black_box(&q), true).unwrap()));
    c.bench_function("fitting/monomial_quotient", |b| b.iter(|| fitting(black_box(&q), 0).unwrap()));
    c.bench_function("hilbert/monomial_quotient", |b| b.iter(|| hilbert(black_box(&q)).unwrap()));
}

fn towers(c: &mut Criterion) {
    let mut g = c.benchmark_group("tower");
    g.sample_size(10);
    let plane = point_ideal(3);
    g.bench_function("plane_point", |b| b.iter(|| run_tower(black_box(&plane)).unwrap()));
    let space = point_ideal(4);
    g.bench_function("space_point", |b| b.iter(|| run_tower(black_box(&space)).unwrap()));
    g.finish();
}

criterion_group!(benches, groebner_bases, resolutions, towers);
criterion_main!(benches);
