use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use deco_bench::shipped_scripts;
use deco_core::format::parse_proof;
use deco_core::kernel::check_derivation;
use deco_core::shipped;

fn check_shipped(c: &mut Criterion) {
    let (spec, scripts) = shipped_scripts();
    let mut group = c.benchmark_group("check");
    for s in &scripts {
        let ctx = s.context(&spec);
        group.bench_function(&s.name, |b| {
            b.iter(|| {
                let v = check_derivation(black_box(&s.derivation), &ctx);
                assert!(v.accepted);
                v
            })
        });
    }
    group.finish();
}

fn parse_shipped(c: &mut Criterion) {
    let (spec, _) = shipped_scripts();
    c.bench_function("parse/all proofs", |b| {
        b.iter(|| {
            for (_, text) in shipped::PROOFS {
                black_box(parse_proof(text, &spec).unwrap());
            }
        })
    });
}

criterion_group!(benches, check_shipped, parse_shipped);
criterion_main!(benches);
