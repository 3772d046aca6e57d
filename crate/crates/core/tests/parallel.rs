//! The parallel paths must reproduce the sequential results.

use subspace_graph::solvers::{self, Budget};
use subspace_graph::{build_graph, verify, BuildOptions, FieldSpec};

#[test]
fn build_is_identical() {
    for (n, q) in [(3, 2), (4, 2), (4, 3), (5, 2), (3, 4)] {
        let f = FieldSpec::of_order(q).unwrap();
        let seq = build_graph(&f, n, &BuildOptions::default()).unwrap();
        let par = build_graph(
            &f,
            n,
            &BuildOptions {
                parallel: true,
                ..BuildOptions::default()
            },
        )
        .unwrap();
        assert_eq!(seq.vertices(), par.vertices());
        assert_eq!(seq.dense(), par.dense());
    }
}

#[test]
fn clique_value_and_status_agree() {
    for (n, q) in [(3, 3), (4, 2), (4, 3), (5, 2)] {
        let g = build_graph(&FieldSpec::of_order(q).unwrap(), n, &BuildOptions::default()).unwrap();
        let seq = solvers::max_clique(g.dense(), &Budget::unlimited());
        let par = solvers::max_clique(
            g.dense(),
            &Budget {
                parallel: true,
                ..Budget::unlimited()
            },
        );
        assert_eq!(seq.value, par.value);
        assert_eq!(seq.status, par.status);
        assert!(verify(&par.certificate, g.dense()).is_ok());
        let seq = solvers::max_independent_set(g.dense(), &Budget::unlimited());
        let par = solvers::max_independent_set(
            g.dense(),
            &Budget {
                parallel: true,
                ..Budget::unlimited()
            },
        );
        assert_eq!(seq.value, par.value);
    }
}

#[test]
fn sequential_runs_are_reproducible() {
    let g = build_graph(&FieldSpec::of_order(3).unwrap(), 4, &BuildOptions::default()).unwrap();
    let a = solvers::min_dominating_set(g.dense(), &Budget::unlimited());
    let b = solvers::min_dominating_set(g.dense(), &Budget::unlimited());
    assert_eq!(a.certificate, b.certificate);
    assert_eq!(a.nodes, b.nodes);
}
