//! Scaling benchmarks: containment checking over chain families of doubling
//! size, and matching plus view-based extraction over materialized graphs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cgp_core::testkit::{add_noise, gen_cgp, materialize, s_positive_variant, scaling_pair, GenParams};
use cgp_core::{cond_sim, s_contained, sc_match, t_contained};

fn bench_containment(c: &mut Criterion) {
    let mut group = c.benchmark_group("containment");
    for size in [16usize, 32, 64, 128] {
        let (c1, c2) = scaling_pair(size);
        group.bench_with_input(BenchmarkId::new("t_contained", size), &size, |b, _| {
            b.iter(|| t_contained(&c1, &c2).is_some())
        });
        group.bench_with_input(BenchmarkId::new("s_contained", size), &size, |b, _| {
            b.iter(|| s_contained(&c1, &c2).is_some())
        });
    }
    group.finish();
}

fn bench_matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("matching");
    let params = GenParams::small(7);
    let c2 = gen_cgp(&params);
    let c1 = s_positive_variant(&c2, 3);
    let g = add_noise(&materialize(&c1.positive_version(), 7, "m"), &params, 11);
    group.bench_function("cond_sim", |b| b.iter(|| cond_sim(&c2, &g)));
    if let (Some(sc), Some((_, m2))) = (s_contained(&c1, &c2), cond_sim(&c2, &g)) {
        group.bench_function("sc_match", |b| {
            b.iter(|| sc_match(&c1, &c2, &sc.mapping, &sc.r_plus, &sc.r_minus, &m2))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_containment, bench_matching);
criterion_main!(benches);
