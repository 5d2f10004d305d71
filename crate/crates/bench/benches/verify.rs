use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qrsl_core::identity::{
    builtin_registry, find_builtin, verify_bivariate_relation, verify_combination, verify_identity,
};
use qrsl_core::idl::{parse_idl, print_idl};
use qrsl_core::partitions::{count_signed, crosscheck, SignedClass, Variant};
use qrsl_core::products::poch_inf;
use qrsl_core::{QMonomial, Series};

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for n in [100, 200, 400] {
        let euler = poch_inf(QMonomial::q(1), 1, n).unwrap();
        g.bench_with_input(BenchmarkId::new("recip", n), &euler, |b, s| b.iter(|| s.recip().unwrap()));
        let p: Series = euler.recip().unwrap();
        g.bench_with_input(BenchmarkId::new("mul", n), &p, |b, s| b.iter(|| s.mul(s).unwrap()));
    }
    g.finish();
}

fn identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for name in ["rr1", "new36", "m18-1"] {
        let spec = find_builtin(name).unwrap().spec;
        g.bench_function(BenchmarkId::new(name, 200), |b| b.iter(|| verify_identity(black_box(&spec), 200)));
    }
    let reg = builtin_registry();
    g.bench_function("registry/200", |b| b.iter(|| reg.iter().map(|s| verify_identity(s, 200)).all(|r| r.passed())));
    g.bench_function("new36-chain/300", |b| b.iter(|| verify_combination(300)));
    g.bench_function("aram12/60", |b| b.iter(|| verify_bivariate_relation("aram12", 60).unwrap()));
    g.finish();
}

fn partitions(c: &mut Criterion) {
    let mut g = c.benchmark_group("partitions");
    g.sample_size(10);
    g.bench_function("ram36-signed/30", |b| b.iter(|| count_signed(SignedClass::Ram36, Variant::Proof, black_box(30))));
    g.bench_function("crosscheck m18-4/24", |b| b.iter(|| crosscheck("m18-4-comb", 24, Variant::Proof).unwrap()));
    g.finish();
}

fn idl(c: &mut Criterion) {
    let text = print_idl(&builtin_registry()).unwrap();
    c.bench_function("idl/parse registry", |b| b.iter(|| parse_idl(black_box(&text)).unwrap()));
}

criterion_group!(benches, series, identities, partitions, idl);
criterion_main!(benches);
