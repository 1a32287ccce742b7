use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pencil::bifurcation::{classify, paper_cases};
use pencil::deformation::{miniversal_template, tangent_space};
use pencil::kronecker::{kronecker_form, parse_type};
use pencil::pencil::random_equivalence;

fn kronecker(c: &mut Criterion) {
    let form = parse_type("u1 d2 e{2} e{1} e{1}").unwrap().representative();
    let base = form.canonical_pencil();
    let p = base
        .apply_equivalence(&random_equivalence(base.m(), base.n(), 1))
        .unwrap();
    c.bench_function("kronecker_form 6x6", |b| {
        b.iter(|| kronecker_form(black_box(&p)))
    });
}

fn deformation(c: &mut Criterion) {
    let form = parse_type("u2 d1 e{2.1} e{1}").unwrap().representative();
    c.bench_function("miniversal_template", |b| {
        b.iter(|| miniversal_template(black_box(&form)))
    });
    let base = form.canonical_pencil();
    c.bench_function("tangent_space rank", |b| {
        b.iter(|| tangent_space(black_box(&base)).rank())
    });
}

fn bifurcation(c: &mut Criterion) {
    let cusp = paper_cases("t22.8", 1, 2).unwrap().remove(0).family;
    c.bench_function("classify cubic block", |b| {
        b.iter(|| classify(black_box(&cusp), 7))
    });
    let lines = paper_cases("t22.7", 2, 0).unwrap().remove(0).family;
    c.bench_function("classify two lines", |b| {
        b.iter(|| classify(black_box(&lines), 7))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = kronecker, deformation, bifurcation
}
criterion_main!(benches);
