use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gamma0_hecke::farey::farey_sequence;
use gamma0_hecke::hecke::{gen_sm, h_tilde, vector_hecke};
use gamma0_hecke::CosetTable;

fn bench_h_tilde(c: &mut Criterion) {
    let mut group = c.benchmark_group("h_tilde");
    for m in [7, 30, 60] {
        group.bench_with_input(BenchmarkId::new("h_tilde", m), &m, |b, &m| {
            b.iter(|| h_tilde(black_box(m)))
        });
        group.bench_with_input(BenchmarkId::new("gen_sm", m), &m, |b, &m| {
            b.iter(|| gen_sm(black_box(m)))
        });
    }
    group.finish();
}

fn bench_vector_hecke(c: &mut Criterion) {
    let mut group = c.benchmark_group("vector_hecke");
    for (n, m) in [(6, 5), (12, 7), (30, 7)] {
        let table = CosetTable::new(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_m{m}")), &m, |b, &m| {
            b.iter(|| vector_hecke(&table, black_box(m)))
        });
    }
    group.finish();
}

fn bench_cosets(c: &mut Criterion) {
    let mut group = c.benchmark_group("coset_table");
    for n in [12, 60, 210] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| CosetTable::new(black_box(n)))
        });
    }
    group.finish();
}

fn bench_farey(c: &mut Criterion) {
    c.bench_function("farey_sequence_50", |b| b.iter(|| farey_sequence(black_box(50))));
}

criterion_group!(benches, bench_h_tilde, bench_vector_hecke, bench_cosets, bench_farey);
criterion_main!(benches);
