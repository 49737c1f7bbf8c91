use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hvb_bench::{dense_rational, hidden_sum, jordan_tensor, multiplication_isogeny};
use hvb_core::isogeny::{frobenius_pushforward, pushforward};
use hvb_core::nilmod::{decompose, ext_dims, hom_dim, is_isomorphic};
use hvb_core::{FieldSpec, Flavor, NilModule};

fn linear_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_linear_algebra");
    for n in [10, 20, 40] {
        let m = dense_rational(n);
        group.bench_with_input(BenchmarkId::new("rank_q", n), &m, |b, m| b.iter(|| black_box(m).rank()));
        group.bench_with_input(BenchmarkId::new("inverse_q", n), &m, |b, m| b.iter(|| black_box(m).inverse()));
    }
    group.finish();
}

fn modules(c: &mut Criterion) {
    let mut group = c.benchmark_group("modules");
    for n in [3, 6] {
        let t = jordan_tensor(n, n);
        group.bench_with_input(BenchmarkId::new("decompose_jordan_tensor", n), &t, |b, t| {
            b.iter(|| decompose(black_box(t), 0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("hom_dim_jordan_tensor", n), &t, |b, t| {
            b.iter(|| hom_dim(black_box(t), t).unwrap())
        });
    }
    let hidden = hidden_sum(3, 4, 3);
    let plain = NilModule::jordan(&FieldSpec::prime(3).unwrap(), Flavor::Unipotent, 4)
        .direct_sum(&NilModule::jordan(&FieldSpec::prime(3).unwrap(), Flavor::Unipotent, 3))
        .unwrap();
    group.bench_function("is_isomorphic_gf3_rank7", |b| b.iter(|| is_isomorphic(black_box(&hidden), &plain, 0).unwrap()));
    for g in [3, 5] {
        let t = NilModule::trivial(&FieldSpec::rationals(), Flavor::Additive, g, 1);
        group.bench_with_input(BenchmarkId::new("ext_trivial", g), &t, |b, t| b.iter(|| ext_dims(black_box(t), t, g).unwrap()));
    }
    group.finish();
}

fn isogenies(c: &mut Criterion) {
    let mut group = c.benchmark_group("isogenies");
    group.bench_function("frobenius_enumerate_g3_r3_p5_n3", |b| {
        b.iter(|| {
            let rep = frobenius_pushforward(3, 3, 5, 3, None).unwrap();
            rep.blocks().map(|blk| blk.rank()).sum::<usize>()
        })
    });
    let (iso, e) = multiplication_isogeny(12, 2, 5);
    group.bench_function("pushforward_mult2_level12", |b| b.iter(|| pushforward(black_box(&iso), &e, 0).unwrap()));
    group.finish();
}

criterion_group!(benches, linear_algebra, modules, isogenies);
criterion_main!(benches);
