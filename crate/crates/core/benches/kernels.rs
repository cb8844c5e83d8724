//! Benchmarks comparing the rayon-parallel per-degree kernel computation
//! against the sequential path (`ResolveOptions { sequential: true }`).
//! Building with `--no-default-features` removes rayon entirely, in which
//! case the two groups coincide.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use mb13::graded::{thom_module, GradedModule};
use mb13::resolution::{minimal_resolution, ResolveOptions};
use mb13::sseq::cross_validate_ext;
use mb13::steenrod::AlgebraProfile;

fn resolve_trivial(c: &mut Criterion) {
    let trivial = GradedModule::with_basis(&[("1".to_string(), 0)], 30);
    let mut group = c.benchmark_group("resolve_trivial_a2_t30_s8");
    for (name, sequential) in [("parallel", false), ("sequential", true)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                let res = minimal_resolution(
                    black_box(&trivial),
                    AlgebraProfile::Subalgebra(2),
                    8,
                    30,
                    ResolveOptions { sequential },
                );
                black_box(res.ext_rank(4, 12).unwrap())
            })
        });
    }
    group.finish();
}

fn resolve_thom(c: &mut Criterion) {
    let m = thom_module(1, 4, 8).unwrap().into_module();
    let mut group = c.benchmark_group("resolve_thom_s1_t30_s8");
    for (name, sequential) in [("parallel", false), ("sequential", true)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                let res = minimal_resolution(
                    black_box(&m),
                    AlgebraProfile::Subalgebra(2),
                    8,
                    30,
                    ResolveOptions { sequential },
                );
                black_box(res.ext_rank(5, 18).unwrap())
            })
        });
    }
    group.finish();
}

fn cross_validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("cross_validate_s3");
    group.sample_size(20);
    for (name, sequential) in [("parallel", false), ("sequential", true)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                let report = cross_validate_ext(3, ResolveOptions { sequential }).unwrap();
                assert!(report.pass);
                black_box(report.rows.len())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, resolve_trivial, resolve_thom, cross_validation);
criterion_main!(benches);
