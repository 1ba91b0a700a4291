use criterion::{criterion_group, criterion_main, Criterion};

use hopfimage::algebra::{check_hopf, check_hopf_seq};
use hopfimage::builtins;
use hopfimage::faithful::{kernel_chain, kernel_chain_seq, tensor_family, Limits};

fn bench_check_hopf(c: &mut Criterion) {
    let h = builtins::sweedler().tensor(&builtins::sweedler()).unwrap();
    let mut group = c.benchmark_group("check_hopf_dim16");
    group.bench_function("parallel", |b| b.iter(|| assert!(check_hopf(&h).all_passed())));
    group.bench_function("sequential", |b| b.iter(|| assert!(check_hopf_seq(&h).all_passed())));
    group.finish();
}

fn bench_kernel_chain(c: &mut Criterion) {
    let q = builtins::builtin_family("fam:quotients:Z2xZ2").unwrap();
    let fam = tensor_family(&q, &q).unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("kernel_chain_dim16_scan3");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| kernel_chain(&fam, 3, &limits).unwrap().dims())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| kernel_chain_seq(&fam, 3, &limits).unwrap().dims())
    });
    group.finish();
}

criterion_group!(benches, bench_check_hopf, bench_kernel_chain);
criterion_main!(benches);
