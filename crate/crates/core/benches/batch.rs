//! Batch workloads on one worker thread versus the default pool. Built
//! without the `parallel` feature, only the sequential path is measured.

use criterion::{criterion_group, criterion_main, Criterion};

use clc_core::catalog::{persistence_experiment, verify_correspondence, Sampling};
use clc_core::fillins::FillInKind;
use clc_core::gen::{random_full_frame, rng_for, GenOptions};
use clc_core::semantics::valid;
use clc_core::{parse, Language};

type Workload = Box<dyn Fn() + Send + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    let frame = random_full_frame(&mut rng_for(3, 0), 6, GenOptions::default());
    let schema = parse("(p ~> q) & (q ~> r) -> p ~> r", Language::Cond).unwrap();
    vec![
        (
            "verify_correspondence/mon",
            Box::new(|| {
                verify_correspondence("mon", 2, Sampling::new(200, 1).worlds(3, 4)).unwrap();
            }),
        ),
        (
            "persistence/mp-reflexive",
            Box::new(|| {
                persistence_experiment("mp", FillInKind::Reflexive, Sampling::new(200, 2).worlds(2, 5)).unwrap();
            }),
        ),
        (
            "valid/tr-6-worlds",
            Box::new(move || {
                valid(&frame, &schema, u64::MAX).unwrap();
            }),
        ),
    ]
}

#[cfg(feature = "parallel")]
fn bench(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        group.bench_function("sequential", |b| b.iter(|| single.install(&work)));
        group.bench_function("parallel", |b| b.iter(&work));
        group.finish();
    }
}

#[cfg(not(feature = "parallel"))]
fn bench(c: &mut Criterion) {
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        group.bench_function("sequential", |b| b.iter(&work));
        group.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
