//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Oracles here are deliberately naive and
//! share no code with the library beyond reading graph adjacency.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use subspace_graph::certificate::Certificate;
use subspace_graph::constructions;
use subspace_graph::counting::{self, BigCount};
use subspace_graph::graph::io;
use subspace_graph::solvers::{self, Budget};
use subspace_graph::{build_graph, BuildOptions, DenseGraph, FieldSpec, IntersectionGraph};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Solver budget used for every exact search below.
const SOLVE_BUDGET: f64 = 60.0;

fn graph(n: usize, q: u32) -> IntersectionGraph {
    build_graph(&FieldSpec::of_order(q).unwrap(), n, &BuildOptions::default()).unwrap()
}

fn big(x: usize) -> BigCount {
    BigCount::from(x)
}

// ---- naive oracles -------------------------------------------------------

/// Subspaces of GF(q)^n (q prime) as sets of vector codes, grouped by
/// dimension. Built by closing spans one vector at a time; duplicates are
/// removed by comparing the sets themselves.
fn oracle_subspaces(n: usize, q: usize) -> Vec<Vec<Vec<bool>>> {
    let size = q.pow(n as u32);
    let digits = |mut x: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let d = x % q;
                x /= q;
                d
            })
            .collect()
    };
    let code = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * q + c);
    let vecs: Vec<Vec<usize>> = (0..size).map(digits).collect();
    let combine = |a: usize, c: usize, b: usize| -> usize {
        let s: Vec<usize> = vecs[a]
            .iter()
            .zip(&vecs[b])
            .map(|(x, y)| (x + c * y) % q)
            .collect();
        code(&s)
    };

    let mut zero = vec![false; size];
    zero[0] = true;
    let mut by_dim = vec![vec![zero]];
    for _ in 0..n {
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut next = Vec::new();
        for s in by_dim.last().unwrap() {
            for v in (0..size).filter(|&v| !s[v]) {
                let mut t = vec![false; size];
                for (x, _) in s.iter().enumerate().filter(|(_, &m)| m) {
                    for c in 0..q {
                        t[combine(x, c, v)] = true;
                    }
                }
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        by_dim.push(next);
    }
    by_dim
}

fn naive_clique_ok(g: &DenseGraph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v)))
}

fn naive_independent_ok(g: &DenseGraph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

fn naive_dominating_ok(g: &DenseGraph, s: &[usize]) -> bool {
    (0..g.order()).all(|v| s.iter().any(|&w| w == v || g.has_edge(v, w)))
}

fn naive_coloring_ok(g: &DenseGraph, c: &[usize]) -> bool {
    c.len() == g.order()
        && (0..g.order()).all(|u| (u + 1..g.order()).all(|v| !g.has_edge(u, v) || c[u] != c[v]))
}

fn colors_used(c: &[usize]) -> usize {
    c.iter().collect::<HashSet<_>>().len()
}

fn members(c: &Certificate) -> Vec<usize> {
    c.members()
}

/// Exhaustive values `(omega, alpha, gamma, chi)` for at most 16 vertices.
fn exhaustive(g: &DenseGraph) -> (usize, usize, usize, usize) {
    let n = g.order();
    let adj: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&w| g.has_edge(v, w)).fold(0u32, |m, w| m | 1 << w))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let mut independent = vec![false; 1 << n];
    let (mut omega, mut alpha, mut gamma) = (0, 0, n);
    for s in 0..=full {
        let members = (0..n).filter(|&v| s >> v & 1 == 1);
        let size = s.count_ones() as usize;
        let mut clique = true;
        let mut indep = true;
        let mut covered = s;
        for v in members {
            let others = s & !(1 << v);
            clique &= adj[v] & others == others;
            indep &= adj[v] & others == 0;
            covered |= adj[v];
        }
        independent[s as usize] = indep;
        if clique {
            omega = omega.max(size);
        }
        if indep {
            alpha = alpha.max(size);
        }
        if covered == full {
            gamma = gamma.min(size);
        }
    }
    // chi[S] = 1 + min chi[S \ I] over independent I containing the lowest
    // vertex of S
    let mut chi = vec![usize::MAX; 1 << n];
    chi[0] = 0;
    for s in 1..=full as usize {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut sub = rest;
        loop {
            let i = sub | low;
            if independent[i] && chi[s & !i] != usize::MAX {
                chi[s] = chi[s].min(chi[s & !i] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    (omega, alpha, gamma, chi[full as usize])
}

// ---- criteria ------------------------------------------------------------

fn c1_counting() -> Outcome {
    let mut cases: Vec<(usize, usize)> = (1..=4).flat_map(|n| [(n, 2), (n, 3)]).collect();
    cases.push((5, 2));
    let mut checked = 0;
    for (n, q) in cases {
        let subs = oracle_subspaces(n, q);
        for (k, class) in subs.iter().enumerate() {
            let formula = counting::gaussian_binomial(n as u32, k as u32, q as u64);
            ensure!(
                formula == big(class.len()),
                "[{n},{k}]_{q}: formula {formula}, brute force {}",
                class.len()
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} brackets equal brute-force counts"))
}

fn c2_complement() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for q in [2, 3] {
            let subs = oracle_subspaces(n, q);
            for m in 0..=n {
                for t in 0..=n {
                    let formula = counting::complement_count(n as u32, m as u32, t as u32, q as u64);
                    let mut pairs = 0usize;
                    for u in &subs[m] {
                        let count = subs[t]
                            .iter()
                            .filter(|w| u.iter().zip(w.iter()).skip(1).all(|(a, b)| !(*a && *b)))
                            .count();
                        ensure!(
                            formula == big(count),
                            "n={n} q={q} m={m} t={t}: formula {formula}, one subspace sees {count}"
                        );
                        pairs += count;
                    }
                    ensure!(
                        formula * big(subs[m].len()) == big(pairs),
                        "n={n} q={q} m={m} t={t}: pair count {pairs}"
                    );
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} (n, q, m, t) cases equal brute-force pair counts"
    ))
}

fn c3_degrees() -> Outcome {
    let mut vertices = 0;
    for (n, q) in [(2, 2), (3, 2), (4, 2), (3, 3), (4, 3), (5, 2)] {
        let g = graph(n, q);
        for v in 0..g.order() {
            let m = g.subspace(v).dim() as u32;
            let d = counting::degree_formula(n as u32, m, q as u64).map_err(|e| e.to_string())?;
            let observed = (0..g.order()).filter(|&w| g.dense().has_edge(v, w)).count();
            ensure!(
                d == big(observed),
                "({n},{q}) vertex {}: degree {observed}, formula {d}",
                g.label(v)
            );
        }
        vertices += g.order();
    }
    Ok(format!("{vertices} vertex degrees equal the formula"))
}

fn c4_connectivity() -> Outcome {
    for (n, q, expected) in [
        (2, 2, false),
        (2, 3, false),
        (3, 2, true),
        (3, 3, true),
        (4, 2, true),
        (4, 3, true),
        (5, 2, true),
    ] {
        let got = graph(n, q).is_connected().map_err(|e| e.to_string())?;
        ensure!(
            got == expected,
            "({n},{q}): connected = {got}, expected {expected}"
        );
    }
    Ok("disconnected at n = 2, connected for n = 3, 4, 5".into())
}

fn c5_odd() -> Outcome {
    let budget = Budget::seconds(SOLVE_BUDGET);
    for (n, q, value) in [(3, 2, 7), (3, 3, 13)] {
        let g = graph(n, q);
        let w = solvers::max_clique(g.dense(), &budget);
        let x = solvers::chromatic_number(g.dense(), &budget);
        ensure!(w.value == Some(value), "({n},{q}): omega {:?}", w.value);
        ensure!(x.value == Some(value), "({n},{q}): chi {:?}", x.value);
        ensure!(
            naive_clique_ok(g.dense(), &members(&w.certificate)),
            "({n},{q}): bad clique"
        );
        ensure!(
            naive_coloring_ok(g.dense(), &members(&x.certificate)),
            "({n},{q}): bad coloring"
        );
    }
    let g = graph(5, 2);
    let clique = constructions::half_dim_clique(&g).map_err(|e| e.to_string())?;
    let coloring = constructions::matching_coloring_odd(&g).map_err(|e| e.to_string())?;
    let cm = members(&clique);
    let colors = members(&coloring.coloring);
    ensure!(
        cm.len() == 186 && naive_clique_ok(g.dense(), &cm),
        "(5,2): clique of size {}",
        cm.len()
    );
    ensure!(
        naive_coloring_ok(g.dense(), &colors) && colors_used(&colors) == 186,
        "(5,2): coloring with {} colors",
        colors_used(&colors)
    );
    Ok("omega = chi = 7, 13 proven; (5,2) 186-clique and 186-coloring verified, so chi = 186".into())
}

fn c6_even() -> Outcome {
    let budget = Budget::seconds(SOLVE_BUDGET);
    let mut detail = Vec::new();
    for (n, q, lo, hi) in [(4, 2, 22, 33), (4, 3, 53, 88)] {
        let g = graph(n, q);
        let predicted = counting::predicted_invariants(n as u32, q as u64).unwrap();
        ensure!(
            predicted.omega_even_lo == Some(big(lo)) && predicted.omega_even_hi == Some(big(hi)),
            "({n},{q}): predicted range {:?}..{:?}",
            predicted.omega_even_lo,
            predicted.omega_even_hi
        );
        let clique = constructions::even_clique_lower(&g, constructions::default_line(&g))
            .map_err(|e| e.to_string())?;
        let cm = members(&clique);
        ensure!(
            cm.len() == lo && naive_clique_ok(g.dense(), &cm),
            "({n},{q}): clique of size {}",
            cm.len()
        );
        let ec = constructions::even_coloring_upper(&g).map_err(|e| e.to_string())?;
        let colors = members(&ec.coloring.coloring);
        let used = colors_used(&colors);
        ensure!(
            naive_coloring_ok(g.dense(), &colors),
            "({n},{q}): improper coloring"
        );
        ensure!(used <= hi, "({n},{q}): coloring uses {used} > {hi}");
        let w = solvers::max_clique(g.dense(), &budget);
        ensure!(
            naive_clique_ok(g.dense(), &members(&w.certificate)),
            "({n},{q}): bad solver clique"
        );
        ensure!(
            w.hi >= lo && w.lo <= hi,
            "({n},{q}): solver range [{}, {}]",
            w.lo,
            w.hi
        );
        if (n, q) == (4, 2) {
            ensure!(w.value.is_some(), "(4,2): clique search not proven");
        }
        detail.push(format!(
            "({n},{q}) clique {lo}, coloring {used} <= {hi}, omega {}",
            w.value
                .map_or(format!("in [{}, {}]", w.lo, w.hi), |v| v.to_string())
        ));
    }
    Ok(detail.join("; "))
}

fn c7_domination() -> Outcome {
    let budget = Budget::seconds(SOLVE_BUDGET);
    for (n, q) in [(3, 2), (4, 2), (3, 3), (4, 3)] {
        let g = graph(n, q);
        let expect = q as usize + 1;
        let r = solvers::min_dominating_set(g.dense(), &budget);
        ensure!(
            r.value == Some(expect),
            "({n},{q}): gamma {:?} ({:?})",
            r.value,
            r.status
        );
        ensure!(
            naive_dominating_ok(g.dense(), &members(&r.certificate)),
            "({n},{q}): bad solver set"
        );
        let w = constructions::default_codim2(&g).unwrap();
        let h = members(&constructions::hyperplane_dominating_set(&g, w).map_err(|e| e.to_string())?);
        ensure!(
            h.len() == expect && naive_dominating_ok(g.dense(), &h),
            "({n},{q}): hyperplane set"
        );
    }
    Ok("gamma = q + 1 proven at (3,2) (4,2) (3,3) (4,3); hyperplane sets dominate".into())
}

fn c8_independence() -> Outcome {
    let budget = Budget::seconds(SOLVE_BUDGET);
    for (n, q, expect) in [(3, 2, 7), (4, 2, 15), (3, 3, 13), (4, 3, 40)] {
        let g = graph(n, q);
        let r = solvers::max_independent_set(g.dense(), &budget);
        ensure!(
            r.value == Some(expect),
            "({n},{q}): alpha {:?} ({:?})",
            r.value,
            r.status
        );
        ensure!(
            naive_independent_ok(g.dense(), &members(&r.certificate)),
            "({n},{q}): bad solver set"
        );
        let l = members(&constructions::lines_independent_set(&g).map_err(|e| e.to_string())?);
        ensure!(
            l.len() == expect && naive_independent_ok(g.dense(), &l),
            "({n},{q}): lines"
        );
    }
    Ok("alpha = (q^n - 1)/(q - 1) proven at (3,2) (4,2) (3,3) (4,3); lines independent".into())
}

fn c9_matchings() -> Outcome {
    let mut seen = Vec::new();
    for (n, q) in [(3, 2), (3, 3), (5, 2), (4, 2), (4, 3)] {
        let g = graph(n, q);
        for t in (1..n).take_while(|&t| 2 * t < n) {
            let b = g.disjointness_bipartite(t).map_err(|e| e.to_string())?;
            let m = solvers::hopcroft_karp(&b).map_err(|e| e.to_string())?;
            let Certificate::Matching(pairs) = &m else {
                return Err("not a matching".into());
            };
            let side = g.class(t).len();
            ensure!(
                pairs.len() == side,
                "({n},{q}) t={t}: {} of {side} matched",
                pairs.len()
            );
            let mut used = HashSet::new();
            for &(u, w) in pairs {
                ensure!(
                    g.subspace(u).dim() == t && g.subspace(w).dim() == n - t,
                    "({n},{q}) t={t}: wrong layers"
                );
                ensure!(!g.dense().has_edge(u, w), "({n},{q}) t={t}: matched pair meets");
                ensure!(used.insert(u) && used.insert(w), "({n},{q}) t={t}: vertex reused");
            }
            seen.push(format!("({n},{q},t={t}):{side}"));
        }
    }
    Ok(format!("perfect matchings {}", seen.join(" ")))
}

fn c10_random() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let budget = Budget::unlimited();
    for i in 0..200 {
        let n = rng.random_range(1..=16);
        let p = rng.random_range(0.1..0.9);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = DenseGraph::from_edges(n, edges);
        let (omega, alpha, gamma, chi) = exhaustive(&g);
        let w = solvers::max_clique(&g, &budget);
        let a = solvers::max_independent_set(&g, &budget);
        let d = solvers::min_dominating_set(&g, &budget);
        let x = solvers::chromatic_number(&g, &budget);
        ensure!(
            w.value == Some(omega),
            "graph {i} (n={n}): clique {:?} vs {omega}",
            w.value
        );
        ensure!(
            a.value == Some(alpha),
            "graph {i} (n={n}): independent {:?} vs {alpha}",
            a.value
        );
        ensure!(
            d.value == Some(gamma),
            "graph {i} (n={n}): dominating {:?} vs {gamma}",
            d.value
        );
        ensure!(
            x.value == Some(chi),
            "graph {i} (n={n}): chromatic {:?} vs {chi}",
            x.value
        );
        ensure!(
            naive_clique_ok(&g, &members(&w.certificate)),
            "graph {i}: bad clique"
        );
        ensure!(
            naive_independent_ok(&g, &members(&a.certificate)),
            "graph {i}: bad independent set"
        );
        ensure!(
            naive_dominating_ok(&g, &members(&d.certificate)),
            "graph {i}: bad dominating set"
        );
        let colors = members(&x.certificate);
        ensure!(
            naive_coloring_ok(&g, &colors) && colors_used(&colors) == chi,
            "graph {i}: bad coloring"
        );
    }
    Ok("200 random graphs: clique, independence, domination, chromatic agree with enumeration".into())
}

fn strip_timing(text: &str) -> Result<String, String> {
    let mut v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    v.as_object_mut()
        .ok_or("report is not an object")?
        .remove("timing");
    serde_json::to_string_pretty(&v).map_err(|e| e.to_string())
}

fn c11_round_trip() -> Outcome {
    let g = graph(4, 2);
    let bytes = io::write_cache(&g);
    let back = io::read_cache(&bytes, None).map_err(|e| e.to_string())?;
    ensure!(back.order() == g.order(), "vertex count changed");
    for v in 0..g.order() {
        ensure!(
            back.dense().neighbors(v) == g.dense().neighbors(v),
            "adjacency row {v} differs"
        );
        ensure!(back.subspace(v) == g.subspace(v), "vertex {v} differs");
    }
    ensure!(io::write_cache(&back) == bytes, "re-exported cache differs");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("r{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_qig"))
            .args(["verify", "-n", "3", "-p", "2", "--json"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            status.status.code() == Some(0),
            "verify exited with {:?}",
            status.status.code()
        );
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        reports.push(strip_timing(&text)?);
    }
    ensure!(reports[0] == reports[1], "reports differ outside timing");
    Ok(format!(
        "(4,2) cache of {} bytes round-trips; verify -n 3 -p 2 exits 0 with stable JSON",
        bytes.len()
    ))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("counting oracle", Duration::from_secs(10), c1_counting),
        ("complement counts", Duration::from_secs(30), c2_complement),
        ("degree formula", Duration::from_secs(120), c3_degrees),
        ("connectivity", Duration::from_secs(60), c4_connectivity),
        (
            "odd n clique and chromatic numbers",
            Duration::from_secs(300),
            c5_odd,
        ),
        ("even n clique bounds", Duration::from_secs(600), c6_even),
        ("domination number", Duration::from_secs(120), c7_domination),
        ("independence number", Duration::from_secs(300), c8_independence),
        ("perfect matchings", Duration::from_secs(60), c9_matchings),
        ("solver cross-validation", Duration::from_secs(120), c10_random),
        ("round trip", Duration::from_secs(60), c11_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > *limit => Err(format!("{d}, but took {elapsed:.1?} (limit {limit:?})")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("PASS {:>2} {name}: {d} ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} ({:.2} s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
