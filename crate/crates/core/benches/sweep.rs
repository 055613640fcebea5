use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use g2skein_core::check::Checker;
use g2skein_core::par::Exec;
use g2skein_core::suites::{run, Bounds, Suite};

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let cases = [
        ("correspondence", vec![Suite::Correspondence], Bounds { max_n: 0, triple_bound: 8 }),
        ("prop", vec![Suite::Prop], Bounds { max_n: 3, triple_bound: 0 }),
        ("eigen+dhat", vec![Suite::Eigen, Suite::Dhat], Bounds { max_n: 4, triple_bound: 0 }),
    ];
    for (name, suites, bounds) in &cases {
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(*name, format!("{exec:?}")), &exec, |b, &exec| {
                b.iter(|| {
                    let recs = run(suites, *bounds, &Checker::Exact, exec, false);
                    assert!(recs.iter().all(|r| r.passed()));
                    recs.len()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
