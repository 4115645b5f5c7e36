use criterion::{black_box, criterion_group, criterion_main, Criterion};

use relhom_core::class::parse_class;
use relhom_core::lab::{run_suite, UniverseSpec};
use relhom_core::resolution::build_resolution;
use relhom_core::smith::{smith_normal_form, IntMatrix};
use relhom_core::{ModuleObject, RingSpec};

const Z4: RingSpec = RingSpec::Modular(4);

fn snf(c: &mut Criterion) {
    // deterministic dense 12x12 integer matrix
    let rows: Vec<Vec<i64>> = (0..12)
        .map(|i| (0..12).map(|j| ((i * 7 + j * 13 + i * j) % 19) - 9).collect())
        .collect();
    let m = IntMatrix::from_rows(12, &rows);
    c.bench_function("smith_normal_form 12x12", |b| {
        b.iter(|| smith_normal_form(black_box(&m)))
    });
}

fn resolution(c: &mut Criterion) {
    let class = parse_class(Z4, "add([4,2])").unwrap();
    let m = ModuleObject::new(Z4, 0, [4, 4, 2, 2, 2]).unwrap();
    c.bench_function("build_resolution add([4,2]) length 4", |b| {
        b.iter(|| build_resolution(&class, black_box(&m), 4).unwrap())
    });
}

fn suite(c: &mut Criterion) {
    let class = parse_class(Z4, "add([2])").unwrap();
    let u = UniverseSpec::new(Z4, 3);
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("prop-2.1 add([2]) bound 3", |b| {
        b.iter(|| run_suite("prop-2.1", &class, &u).unwrap())
    });
    g.bench_function("thm-3.8 add([2]) bound 3", |b| {
        b.iter(|| run_suite("thm-3.8", &class, &u).unwrap())
    });
    g.finish();
}

criterion_group!(benches, snf, resolution, suite);
criterion_main!(benches);
