use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use recterm::bounds::{minimal_base, BaseCertificate, MinimalSearch};
use recterm::eval::{eval_rep_fast, eval_term_direct, verify_with};
use recterm::synth::{assemble, HalfMode, RepKind};
use recterm::{Execution, Recurrence};

fn execs() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn verify_range(c: &mut Criterion) {
    let rec = Recurrence::from_i64s(&[-1, -1, -1], &[0, 0, 1]).unwrap();
    let rep = assemble(&rec, RepKind::RemRem, HalfMode::Ceil, BaseCertificate::pinned(3u32, 1)).unwrap();
    let mut group = c.benchmark_group("verify tribonacci n in [1, 300]");
    for (name, exec) in execs() {
        group.bench_function(name, |b| {
            b.iter(|| verify_with(black_box(&rep), &rec, 1, 300, exec))
        });
    }
    group.finish();
}

fn base_search(c: &mut Criterion) {
    // Mersenne remainder-remainder never settles, so every base up to the cap is tried.
    let rec = Recurrence::from_i64s(&[-3, 2], &[0, 1]).unwrap();
    let mut group = c.benchmark_group("minimal_base exhausting b <= 256");
    group.sample_size(10);
    for (name, exec) in execs() {
        let search = MinimalSearch {
            window: 64,
            b_cap: 256,
            n0_cap: 1,
            exec,
        };
        group.bench_function(name, |b| {
            b.iter(|| minimal_base(black_box(&rec), RepKind::RemRem, HalfMode::Ceil, search))
        });
    }
    group.finish();
}

fn fast_vs_direct(c: &mut Criterion) {
    let rec = Recurrence::from_i64s(&[-1, -1], &[0, 1]).unwrap();
    let rep = assemble(&rec, RepKind::RemRem, HalfMode::Ceil, BaseCertificate::pinned(3u32, 1)).unwrap();
    let term = rep.to_term();
    let mut group = c.benchmark_group("fibonacci eval");
    for n in [20u64, 80, 200] {
        group.bench_with_input(BenchmarkId::new("fast", n), &n, |b, &n| {
            b.iter(|| eval_rep_fast(&rep, black_box(n)))
        });
        group.bench_with_input(BenchmarkId::new("direct", n), &n, |b, &n| {
            b.iter(|| eval_term_direct(&term, black_box(n)))
        });
    }
    group.finish();
}

criterion_group!(benches, verify_range, base_search, fast_vs_direct);
criterion_main!(benches);
