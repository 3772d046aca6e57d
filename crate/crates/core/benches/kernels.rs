use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subspace_graph::solvers::{self, Budget};
use subspace_graph::{build_graph, BuildOptions, FieldSpec};

const CASES: [(usize, u32); 3] = [(4, 3), (5, 2), (3, 7)];

fn mode(parallel: bool) -> &'static str {
    if parallel {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for (n, q) in CASES {
        let field = FieldSpec::of_order(q).unwrap();
        for parallel in [false, true] {
            let opts = BuildOptions {
                parallel,
                verify_shortcut: false,
                ..BuildOptions::default()
            };
            group.bench_with_input(
                BenchmarkId::new(mode(parallel), format!("n{n}_q{q}")),
                &opts,
                |b, opts| b.iter(|| build_graph(&field, n, opts).unwrap()),
            );
        }
    }
    group.finish();
}

fn bench_clique(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_clique");
    group.sample_size(10);
    for (n, q) in CASES {
        let g = build_graph(&FieldSpec::of_order(q).unwrap(), n, &BuildOptions::default()).unwrap();
        for parallel in [false, true] {
            let budget = Budget {
                parallel,
                ..Budget::unlimited()
            };
            group.bench_with_input(
                BenchmarkId::new(mode(parallel), format!("n{n}_q{q}")),
                &budget,
                |b, budget| {
                    b.iter(|| {
                        let r = solvers::max_clique(g.dense(), budget);
                        assert!(r.is_proven());
                        r.lo
                    })
                },
            );
        }
    }
    group.finish();
}

criterion_group!(benches, bench_build, bench_clique);
criterion_main!(benches);
