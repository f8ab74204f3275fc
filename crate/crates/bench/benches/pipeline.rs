use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mckay_hodge::potentials::{build_explicit, build_theorem1, extract_table};
use mckay_hodge::verify::all_identities_vanish;
use mckay_hodge::wdvv::{solve_a4, solve_z2z2, SeedData};
use mckay_hodge::GroupName;

fn closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    group.sample_size(10);
    for order in [6, 10] {
        group.bench_with_input(BenchmarkId::new("explicit_a4", order), &order, |b, &n| {
            b.iter(|| build_explicit(GroupName::A4, black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("root_sum_a4", order), &order, |b, &n| {
            b.iter(|| build_theorem1(GroupName::A4, black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn recursion(c: &mut Criterion) {
    let mut group = c.benchmark_group("recursion");
    group.sample_size(10);
    for order in [8, 12] {
        let base = SeedData::base(order).unwrap();
        group.bench_with_input(BenchmarkId::new("z2z2", order), &order, |b, &n| {
            b.iter(|| solve_z2z2(&base, black_box(n)).unwrap())
        });
        let seeded = SeedData::from_recursion(order).unwrap();
        group.bench_with_input(BenchmarkId::new("a4", order), &order, |b, &n| {
            b.iter(|| solve_a4(&seeded, black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("full_chain", order), &order, |b, &n| {
            b.iter(|| SeedData::from_recursion(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let table = extract_table(&build_explicit(GroupName::Z2xZ2, 8).unwrap(), GroupName::Z2xZ2).unwrap();
    let mut group = c.benchmark_group("identities");
    group.sample_size(10);
    group.bench_function("z2z2_all_order_8", |b| b.iter(|| all_identities_vanish(black_box(&table)).unwrap()));
    group.finish();
}

criterion_group!(pipeline, closed_forms, recursion, identities);
criterion_main!(pipeline);
