use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use o1loop::exec::Exec;
use o1loop::fpl::enumerate_htsfpl;
use o1loop::linkpat::Kind;
use o1loop::transfer::{build_transfer, eigenvector, params, Param};

fn schedules() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn transfer(c: &mut Criterion) {
    let mut g = c.benchmark_group("transfer");
    g.sample_size(10);
    let z = params(&[1, 2, 3, 4, 5, 6, 7]);
    for (name, exec) in schedules() {
        g.bench_with_input(BenchmarkId::new("build odd 7", name), &exec, |b, &exec| {
            b.iter(|| build_transfer(Kind::Odd, &z, &Param::int(9), exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("ground state odd 5", name), &exec, |b, &exec| {
            b.iter(|| eigenvector(Kind::Odd, &z[..5], None, exec).unwrap())
        });
    }
    g.finish();
}

fn fpl(c: &mut Criterion) {
    let mut g = c.benchmark_group("fpl");
    g.sample_size(10);
    for (name, exec) in schedules() {
        g.bench_with_input(BenchmarkId::new("htsfpl 7", name), &exec, |b, &exec| {
            b.iter(|| enumerate_htsfpl(7, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, transfer, fpl);
criterion_main!(benches);
