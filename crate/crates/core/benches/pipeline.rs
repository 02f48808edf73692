use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use projfill::complex::{
    build_xprime, default_k6, orientation_double_cover, sigma_analysis, vertex_link_check,
};
use projfill::coxeter::{caprace_check, t_collection, w_p};
use projfill::exactnum::rat;
use projfill::family::{cartan_at, t_three};
use projfill::reflect::verify_relations;
use projfill::vinberg::face_poset;
use projfill::Exec;
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn poset(c: &mut Criterion) {
    let a = cartan_at(&rat(1, 2)).unwrap();
    let mut g = c.benchmark_group("face_poset");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| face_poset(black_box(&a), 4, e).unwrap())
        });
    }
    g.finish();
}

fn caprace(c: &mut Criterion) {
    let mut g = c.benchmark_group("caprace_check");
    for p in [3, 6] {
        let w = w_p(p).unwrap();
        let coll = t_collection(p).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, p), &exec, |b, &e| {
                b.iter(|| caprace_check(black_box(&w), &coll, e).unwrap())
            });
        }
    }
    g.finish();
}

fn complex(c: &mut Criterion) {
    let x = orientation_double_cover(&build_xprime(&default_k6(), &default_k6())).unwrap();
    let mut g = c.benchmark_group("complex");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("sigma_analysis", name), &exec, |b, &e| {
            b.iter(|| sigma_analysis(black_box(&x), e).unwrap())
        });
        g.bench_with_input(
            BenchmarkId::new("vertex_link_check", name),
            &exec,
            |b, &e| b.iter(|| vertex_link_check(black_box(&x), false, e).unwrap()),
        );
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let t3 = t_three();
    let mut g = c.benchmark_group("verify_relations_t3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| verify_relations(black_box(&t3), e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, poset, caprace, complex, relations);
criterion_main!(benches);
