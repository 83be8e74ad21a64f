use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gammapprox_core::oracle::{gamma_ref_with, GammaMethod};
use gammapprox_core::{euler_mixed, gompertz_numerator, linear_form_quality, rat, ConstantId};

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("construct");
    g.sample_size(10);
    for n in [64u64, 256] {
        g.bench_with_input(BenchmarkId::new("euler_mixed", n), &n, |b, &n| {
            b.iter(|| euler_mixed(black_box(n)))
        });
        g.bench_with_input(BenchmarkId::new("gompertz_numerator", n), &n, |b, &n| {
            b.iter(|| gompertz_numerator(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("gamma");
    g.sample_size(10);
    for bits in [1024u64, 8192] {
        g.bench_with_input(BenchmarkId::new("series", bits), &bits, |b, &p| {
            b.iter(|| gamma_ref_with(p, GammaMethod::Series).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("brent_mcmillan", bits), &bits, |b, &p| {
            b.iter(|| gamma_ref_with(p, GammaMethod::BrentMcMillan).unwrap())
        });
    }
    g.finish();
}

// Cached constant, so this isolates the exact evaluation and the comparison.
fn quality(c: &mut Criterion) {
    let pair = euler_mixed(128);
    let x = rat(1);
    let s = rat(pair.diophantine_scaler(&x));
    let p = -pair.numerator.eval(&x) * &s;
    let q = pair.denominator.eval(&x) * &s;
    let target = ConstantId::Gamma;
    c.bench_function("linear_form_quality/euler_128", |b| {
        b.iter(|| linear_form_quality(&p, &q, &target, 1024).unwrap())
    });
}

criterion_group!(benches, construction, oracles, quality);
criterion_main!(benches);
