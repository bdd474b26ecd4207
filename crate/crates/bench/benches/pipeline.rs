use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use weakyd::examples::{character_module, sign_characters};
use weakyd::rep::{base_comodule, base_module, regular_comodule, regular_module};
use weakyd::wmb::{base_algebra, structure_suite};
use weakyd::yd::{check_yd, find_yd_structures, phi_hat_inverse, yd_dual};
use weakyd_bench::{fixture, pair_algebra};

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure_suite");
    g.sample_size(10);
    for n in [2, 3, 4] {
        let w = pair_algebra(n);
        g.bench_with_input(BenchmarkId::new("kP", n), &w, |bch, w| bch.iter(|| structure_suite(black_box(w))));
    }
    g.finish();
}

fn base(c: &mut Criterion) {
    let w = pair_algebra(3);
    c.bench_function("base_algebra kP3", |bch| bch.iter(|| base_algebra(black_box(&w)).unwrap()));
}

fn yd(c: &mut Criterion) {
    let (inst, b) = fixture("kP2");
    let w = &inst.structure;
    let (rm, rc) = (base_module(w, &b).unwrap(), base_comodule(w, &b).unwrap());
    let (am, ac) = (regular_module(w), regular_comodule(w));
    c.bench_function("check_yd kP2 base object", |bch| bch.iter(|| check_yd(w, &b, &rm, &rc, &[], &[])));
    c.bench_function("phi_hat_inverse kP2 regular", |bch| bch.iter(|| phi_hat_inverse(w, &b, &am, &ac).unwrap()));
    let y = check_yd(w, &b, &rm, &rc, &[], &[]).yd.unwrap();
    c.bench_function("yd_dual kP2 base object", |bch| bch.iter(|| yd_dual(w, &b, &y).unwrap()));

    let (inst, b) = fixture("kS3");
    let w = &inst.structure;
    let v = character_module(w, "x", &sign_characters(&inst.groupoid)[1]);
    c.bench_function("find_yd_structures kS3 sign", |bch| bch.iter(|| find_yd_structures(w, &b, &v, 64, 12).unwrap()));
}

criterion_group!(benches, suite, base, yd);
criterion_main!(benches);
