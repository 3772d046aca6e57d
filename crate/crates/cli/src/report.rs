//! The `verify` campaign: predictions, constructions and solvers side by
//! side, one row per checked property.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use subspace_graph::certificate::{self, CertificateRecord};
use subspace_graph::constructions::{self, ConstructionError};
use subspace_graph::counting::{self, BigCount, PredictedInvariants};
use subspace_graph::graph::{GraphError, GraphStats};
use subspace_graph::solvers::{self, Budget, SolveResult, Status};
use subspace_graph::{BuildOptions, Certificate, FieldSpec, IntersectionGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "within-bounds")]
    WithinBounds,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "skipped")]
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::WithinBounds => "within-bounds",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Skipped => "skipped",
        }
    }
}

/// Predicted value or range, as decimal strings.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Prediction {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

/// A bound contributed by an explicit construction.
#[derive(Debug, Clone, Serialize)]
pub struct Constructed {
    /// Key into `InvariantReport::certificates`.
    pub source: String,
    pub bound: BoundSide,
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverOutcome {
    pub solver: String,
    pub value: Option<usize>,
    pub lo: usize,
    pub hi: usize,
    pub status: Status,
    pub nodes: u64,
    /// Key into `InvariantReport::certificates`.
    pub certificate: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub name: String,
    pub formula: Option<String>,
    pub predicted: Option<Prediction>,
    pub constructed: Vec<Constructed>,
    pub solver: Option<SolverOutcome>,
    /// Observed value for structural rows (connectivity, degrees).
    pub observed: Option<String>,
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub budget_seconds: Option<f64>,
    pub max_nodes: Option<u64>,
    pub max_vertices: usize,
    pub parallel: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub matches: usize,
    pub within_bounds: usize,
    pub mismatches: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub tool: ToolInfo,
    pub config: ConfigEcho,
    pub graph: GraphStats,
    pub predicted: PredictedInvariants,
    pub rows: Vec<Row>,
    pub certificates: BTreeMap<String, CertificateRecord>,
    pub summary: Summary,
    /// Wall-clock seconds per phase. Everything outside this key is
    /// reproducible for a fixed configuration in sequential mode.
    pub timing: BTreeMap<String, f64>,
}

impl InvariantReport {
    pub fn has_mismatch(&self) -> bool {
        self.summary.mismatches > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "G(GF({})^{}): {} vertices, {} edges",
            c.q, c.n, self.graph.vertices, self.graph.edges
        );
        let _ = writeln!(
            out,
            "{:<18} {:<20} {:<22} {:<24} verdict",
            "property", "predicted", "constructed", "solver"
        );
        for r in &self.rows {
            let predicted = match &r.predicted {
                Some(Prediction { value: Some(v), .. }) => v.clone(),
                Some(Prediction {
                    lo: Some(lo),
                    hi: Some(hi),
                    ..
                }) => format!("[{lo}, {hi}]"),
                _ => "-".into(),
            };
            let constructed = if r.constructed.is_empty() {
                r.observed.clone().unwrap_or_else(|| "-".into())
            } else {
                r.constructed
                    .iter()
                    .map(|k| {
                        let side = if k.bound == BoundSide::Lower { ">=" } else { "<=" };
                        match k.value {
                            Some(v) => format!("{side}{v}"),
                            None => format!("{side}?"),
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let solver = match &r.solver {
                Some(s) => match s.value {
                    Some(v) => format!("{v} ({:?})", s.status).to_lowercase(),
                    None => format!("[{}, {}] ({:?})", s.lo, s.hi, s.status).to_lowercase(),
                },
                None => "-".into(),
            };
            let mut verdict = r.verdict.as_str().to_string();
            if let Some(reason) = &r.reason {
                let _ = write!(verdict, ": {reason}");
            }
            let _ = writeln!(
                out,
                "{:<18} {:<20} {:<22} {:<24} {}",
                r.name,
                clip(&predicted, 20),
                clip(&constructed, 22),
                solver,
                verdict
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} rows: {} match, {} within-bounds, {} skipped, {} MISMATCH",
            s.rows, s.matches, s.within_bounds, s.skipped, s.mismatches
        );
        out
    }
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        s.chars().take(width - 3).collect::<String>() + "..."
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n: usize,
    pub field: FieldSpec,
    pub budget: Budget,
    pub build: BuildOptions,
}

/// What a row's prediction claims.
enum Claim {
    Exact(u64),
    Range(u64, u64),
    Unavailable(String),
}

fn small(c: &BigCount) -> u64 {
    counting::to_u64(c).expect("a built graph has a small vertex count")
}

struct Campaign<'a> {
    g: &'a IntersectionGraph,
    certificates: BTreeMap<String, CertificateRecord>,
    timing: BTreeMap<String, f64>,
}

impl Campaign<'_> {
    /// Records a construction outcome as a bound, keeping its certificate.
    fn constructed(&mut self, key: &str, bound: BoundSide, r: &Result<Certificate, String>) -> Constructed {
        match r {
            Ok(c) => {
                self.certificates.insert(key.to_string(), c.record(true));
                Constructed {
                    source: key.to_string(),
                    bound,
                    value: Some(c.value()),
                    error: None,
                }
            }
            Err(e) => Constructed {
                source: key.to_string(),
                bound,
                value: None,
                error: Some(e.clone()),
            },
        }
    }

    fn solve(
        &mut self,
        name: &str,
        f: impl FnOnce(&subspace_graph::DenseGraph) -> SolveResult,
    ) -> (SolverOutcome, bool) {
        let r = f(self.g.dense());
        self.timing
            .insert(format!("solver.{name}"), r.elapsed.as_secs_f64());
        let ok = certificate::verify(&r.certificate, self.g.dense()).is_ok();
        let key = format!("solver.{name}");
        self.certificates.insert(key.clone(), r.certificate.record(ok));
        (
            SolverOutcome {
                solver: name.to_string(),
                value: r.value,
                lo: r.lo,
                hi: r.hi,
                status: r.status,
                nodes: r.nodes,
                certificate: key,
            },
            ok,
        )
    }
}

/// Combines a claim with every certified bound into a verdict.
fn judge(
    claim: &Claim,
    constructed: &[Constructed],
    solver: &SolverOutcome,
    solver_verified: bool,
) -> (Verdict, Option<String>, Vec<String>) {
    let mut notes = Vec::new();
    if !solver_verified {
        return (
            Verdict::Mismatch,
            Some("solver certificate failed verification".into()),
            notes,
        );
    }
    if let Some(bad) = constructed.iter().find(|c| c.error.is_some()) {
        let reason = format!("{}: {}", bad.source, bad.error.as_deref().unwrap_or_default());
        return (Verdict::Mismatch, Some(reason), notes);
    }
    let mut lo = solver.lo as u64;
    let mut hi = solver.hi as u64;
    for c in constructed {
        let v = c.value.expect("no error means a value") as u64;
        match c.bound {
            BoundSide::Lower => lo = lo.max(v),
            BoundSide::Upper => hi = hi.min(v),
        }
    }
    if lo > hi {
        return (
            Verdict::Mismatch,
            Some(format!("certified bounds cross: {lo} > {hi}")),
            notes,
        );
    }
    let sandwich_only = solver.value.is_none() && lo == hi;
    match *claim {
        Claim::Exact(p) => {
            if p < lo || p > hi {
                (
                    Verdict::Mismatch,
                    Some(format!("{p} outside certified [{lo}, {hi}]")),
                    notes,
                )
            } else if lo == hi {
                if sandwich_only {
                    notes.push("settled by the construction sandwich; solver did not finish".into());
                }
                (Verdict::Match, None, notes)
            } else {
                (
                    Verdict::WithinBounds,
                    Some(format!("unresolved: certified [{lo}, {hi}]")),
                    notes,
                )
            }
        }
        Claim::Range(l, h) => {
            if let Some(c) = constructed
                .iter()
                .find(|c| c.bound == BoundSide::Upper && c.value.unwrap() as u64 > h)
            {
                let reason = format!("{} uses {} > {h}", c.source, c.value.unwrap());
                return (Verdict::Mismatch, Some(reason), notes);
            }
            if hi < l || lo > h {
                return (
                    Verdict::Mismatch,
                    Some(format!("certified [{lo}, {hi}] misses [{l}, {h}]")),
                    notes,
                );
            }
            if lo == hi {
                notes.push(format!("exact value {lo}"));
                notes.push(if lo == l {
                    "lower bound is tight".into()
                } else {
                    "lower bound is not tight".into()
                });
            } else {
                notes.push(format!("certified [{lo}, {hi}]"));
            }
            (Verdict::WithinBounds, None, notes)
        }
        Claim::Unavailable(ref why) => (Verdict::Skipped, Some(why.clone()), notes),
    }
}

fn exact_prediction(v: &BigCount) -> Prediction {
    Prediction {
        value: Some(v.to_string()),
        ..Prediction::default()
    }
}

fn range_prediction(lo: &BigCount, hi: &BigCount) -> Prediction {
    Prediction {
        lo: Some(lo.to_string()),
        hi: Some(hi.to_string()),
        value: None,
    }
}

fn timed<T>(timing: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    timing.insert(key.to_string(), t.elapsed().as_secs_f64());
    out
}

fn err_string(e: ConstructionError) -> String {
    e.to_string()
}

/// Builds the graph and runs the whole campaign.
pub fn run_verify(cfg: &VerifyConfig) -> Result<InvariantReport, GraphError> {
    let start = Instant::now();
    let mut timing = BTreeMap::new();
    let g = timed(&mut timing, "build", || {
        subspace_graph::build_graph(&cfg.field, cfg.n, &cfg.build)
    })?;
    let mut report = verify_graph(&g, cfg);
    report.timing.extend(timing);
    report
        .timing
        .insert("total".into(), start.elapsed().as_secs_f64());
    Ok(report)
}

/// Runs the campaign on an already built (or loaded) graph.
pub fn verify_graph(g: &IntersectionGraph, cfg: &VerifyConfig) -> InvariantReport {
    let start = Instant::now();
    let n = g.n();
    let q = g.q() as u64;
    let predicted = counting::predicted_invariants(n as u32, q).expect("graph exists so n >= 2");
    let mut c = Campaign {
        g,
        certificates: BTreeMap::new(),
        timing: BTreeMap::new(),
    };
    let mut rows = Vec::new();
    let edge_note = predicted.edge_case.clone();

    // structure
    let connected = g.is_connected().unwrap_or(false);
    let expect_connected = n >= 3;
    rows.push(Row {
        name: "connectivity".into(),
        formula: Some("connected iff n >= 3".into()),
        predicted: Some(Prediction {
            value: Some(expect_connected.to_string()),
            ..Prediction::default()
        }),
        constructed: vec![],
        solver: None,
        observed: Some(connected.to_string()),
        verdict: if connected == expect_connected {
            Verdict::Match
        } else {
            Verdict::Mismatch
        },
        reason: None,
        notes: vec![],
    });
    rows.push(degree_row(g));

    // constructions
    let odd = n % 2 == 1;
    let mut matchings_row = None;
    let (clique, coloring) = timed(&mut c.timing, "constructions.clique_and_coloring", || {
        if odd {
            let clique = constructions::half_dim_clique(g).map_err(err_string);
            let coloring = constructions::matching_coloring_odd(g);
            (
                Some(("half-dimension-clique", clique)),
                Some(("matching-coloring", coloring.map(|m| (m, None)))),
            )
        } else if n >= 4 {
            let line = constructions::default_line(g);
            let clique = constructions::even_clique_lower(g, line).map_err(err_string);
            let coloring = constructions::even_coloring_upper(g).map(|e| {
                let middle = e.middle.clone();
                (e.coloring, Some((e.outer_colors, middle)))
            });
            (
                Some(("line-star-clique", clique)),
                Some(("matching-brooks-coloring", coloring)),
            )
        } else {
            (None, None)
        }
    });
    let mut coloring_notes = Vec::new();
    let coloring = coloring.map(|(key, r)| {
        let r = match r {
            Ok((mc, extra)) => {
                let parts: Vec<String> = mc
                    .matchings
                    .iter()
                    .map(|(t, m)| {
                        c.certificates.insert(format!("matching.t{t}"), m.record(true));
                        format!("t={t}: {} pairs", m.value())
                    })
                    .collect();
                matchings_row = Some(Ok(parts.join(", ")));
                if let Some((outer, middle)) = extra {
                    coloring_notes.push(format!(
                        "outer part {outer} colors, middle layer {} colors (max degree {})",
                        middle.colors, middle.max_degree
                    ));
                    if let Some(f) = middle.brooks_failure {
                        coloring_notes.push(format!(
                            "middle layer failed a Brooks hypothesis ({f}); used DSATUR"
                        ));
                    }
                }
                Ok(mc.coloring)
            }
            Err(ConstructionError::Matching(e)) => {
                matchings_row = Some(Err(e.to_string()));
                Err(e.to_string())
            }
            Err(e) => Err(e.to_string()),
        };
        (key, r)
    });
    let clique_bound = clique
        .as_ref()
        .map(|(k, r)| c.constructed(k, BoundSide::Lower, r));
    let coloring_bound = coloring
        .as_ref()
        .map(|(k, r)| c.constructed(k, BoundSide::Upper, r));

    if let Some(m) = matchings_row {
        let (verdict, observed, reason) = match m {
            Ok(s) => (Verdict::Match, s, None),
            Err(e) => (Verdict::Mismatch, "missing".into(), Some(e)),
        };
        rows.push(Row {
            name: "perfect-matchings".into(),
            formula: Some("disjointness graph A_t vs A_{n-t} is q^{t(n-t)}-regular".into()),
            predicted: Some(Prediction {
                value: Some("perfect for every t < n/2".into()),
                ..Prediction::default()
            }),
            constructed: vec![],
            solver: None,
            observed: Some(observed),
            verdict,
            reason,
            notes: vec![],
        });
    }

    // clique number
    let (omega_claim, omega_formula, omega_pred) = match (
        &predicted.omega_odd,
        &predicted.omega_even_lo,
        &predicted.omega_even_hi,
    ) {
        (Some(w), _, _) => (
            Claim::Exact(small(w)),
            counting::OMEGA_ODD_FORMULA.to_string(),
            Some(exact_prediction(w)),
        ),
        (None, Some(lo), Some(hi)) => (
            Claim::Range(small(lo), small(hi)),
            format!(
                "{} <= omega <= {}",
                counting::OMEGA_EVEN_LO_FORMULA,
                counting::OMEGA_EVEN_HI_FORMULA
            ),
            Some(range_prediction(lo, hi)),
        ),
        _ => (
            Claim::Unavailable(edge_note.clone().unwrap_or_default()),
            "no closed form for n = 2".to_string(),
            None,
        ),
    };
    let bounds: Vec<Constructed> = clique_bound.iter().chain(&coloring_bound).cloned().collect();
    let (solver, ok) = c.solve("max_clique", |d| solvers::max_clique(d, &cfg.budget));
    rows.push(invariant_row(
        "omega",
        omega_formula.clone(),
        omega_pred.clone(),
        &omega_claim,
        bounds.clone(),
        solver,
        ok,
        vec![],
    ));

    // chromatic number: same claims and certificates as the clique number
    let chi_formula = if odd {
        counting::OMEGA_ODD_FORMULA.to_string()
    } else {
        omega_formula.replace("omega", "chi")
    };
    let (solver, ok) = c.solve("chromatic_number", |d| solvers::chromatic_number(d, &cfg.budget));
    rows.push(invariant_row(
        "chi",
        chi_formula,
        omega_pred,
        &omega_claim,
        bounds,
        solver,
        ok,
        coloring_notes,
    ));

    // domination number
    let dom = timed(&mut c.timing, "constructions.dominating", || default_dom(g));
    let dom_bound: Vec<Constructed> = dom
        .iter()
        .map(|r| c.constructed("hyperplane-dominating-set", BoundSide::Upper, r))
        .collect();
    let (solver, ok) = c.solve("min_dominating_set", |d| {
        solvers::min_dominating_set(d, &cfg.budget)
    });
    let mut gamma_notes = vec![];
    // |union of t proper subspaces| < t q^{n-1} since they share 0, so
    // covering q^n vectors takes t > q
    let needed = (1..)
        .find(|&t: &u64| t * q.pow(n as u32 - 1) > q.pow(n as u32))
        .unwrap();
    if solver.value.is_some() {
        gamma_notes.push(format!(
            "vector count forces at least {needed} subspaces; solver proved no dominating set of size {}",
            needed - 1
        ));
    }
    let mut gamma_row = invariant_row(
        "gamma",
        counting::GAMMA_FORMULA.into(),
        Some(exact_prediction(&predicted.gamma)),
        &Claim::Exact(small(&predicted.gamma)),
        dom_bound,
        solver,
        ok,
        gamma_notes,
    );
    if gamma_row.verdict != Verdict::Mismatch
        && gamma_row
            .solver
            .as_ref()
            .and_then(|s| s.value)
            .is_some_and(|v| (v as u64) < needed)
    {
        gamma_row.verdict = Verdict::Mismatch;
        gamma_row.reason = Some(format!("solver value below the vector-count bound {needed}"));
    }
    rows.push(gamma_row);

    // independence number
    let lines = timed(&mut c.timing, "constructions.lines", || {
        constructions::lines_independent_set(g).map_err(err_string)
    });
    let lines_bound = vec![c.constructed("lines-independent-set", BoundSide::Lower, &lines)];
    let (solver, ok) = c.solve("max_independent_set", |d| {
        solvers::max_independent_set(d, &cfg.budget)
    });
    rows.push(invariant_row(
        "alpha",
        counting::ALPHA_FORMULA.into(),
        Some(exact_prediction(&predicted.alpha)),
        &Claim::Exact(small(&predicted.alpha)),
        lines_bound,
        solver,
        ok,
        vec![],
    ));

    if let Some(e) = &edge_note {
        for r in rows
            .iter_mut()
            .filter(|r| ["omega", "chi", "gamma", "alpha"].contains(&r.name.as_str()))
        {
            r.notes.push(format!("edge case: {e}"));
        }
    }

    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    let summary = Summary {
        rows: rows.len(),
        matches: count(Verdict::Match),
        within_bounds: count(Verdict::WithinBounds),
        mismatches: count(Verdict::Mismatch),
        skipped: count(Verdict::Skipped),
    };
    let mut timing = c.timing;
    timing.insert("verify".into(), start.elapsed().as_secs_f64());
    let f = g.field();
    InvariantReport {
        tool: ToolInfo {
            name: "qig".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        config: ConfigEcho {
            n,
            p: f.p(),
            e: f.e(),
            q: f.q(),
            modulus: f.modulus().to_vec(),
            budget_seconds: cfg.budget.time.map(|d| d.as_secs_f64()),
            max_nodes: cfg.budget.max_nodes,
            max_vertices: cfg.build.max_vertices,
            parallel: cfg.build.parallel || cfg.budget.parallel,
        },
        graph: g.stats(),
        predicted,
        rows,
        certificates: c.certificates,
        summary,
        timing,
    }
}

fn default_dom(g: &IntersectionGraph) -> Option<Result<Certificate, String>> {
    constructions::default_codim2(g)
        .map(|w| constructions::hyperplane_dominating_set(g, w).map_err(err_string))
}

#[allow(clippy::too_many_arguments)]
fn invariant_row(
    name: &str,
    formula: String,
    predicted: Option<Prediction>,
    claim: &Claim,
    constructed: Vec<Constructed>,
    solver: SolverOutcome,
    solver_verified: bool,
    mut notes: Vec<String>,
) -> Row {
    let (verdict, reason, extra) = judge(claim, &constructed, &solver, solver_verified);
    notes.extend(extra);
    Row {
        name: name.into(),
        formula: Some(formula),
        predicted,
        constructed,
        solver: Some(solver),
        observed: None,
        verdict,
        reason,
        notes,
    }
}

fn degree_row(g: &IntersectionGraph) -> Row {
    let n = g.n();
    let q = g.q() as u64;
    let mut predicted = Vec::new();
    let mut bad = Vec::new();
    for m in 1..n {
        let d = counting::degree_formula(n as u32, m as u32, q).expect("proper dimension");
        predicted.push(format!("dim {m}: {d}"));
        for v in g.class(m) {
            if BigCount::from(g.degree(v)) != d {
                bad.push(format!(
                    "{} has degree {} (expected {d})",
                    g.label(v),
                    g.degree(v)
                ));
            }
        }
    }
    let (verdict, reason) = if bad.is_empty() {
        (Verdict::Match, None)
    } else {
        let more = if bad.len() > 3 {
            format!(" and {} more", bad.len() - 3)
        } else {
            String::new()
        };
        (
            Verdict::Mismatch,
            Some(bad[..bad.len().min(3)].join("; ") + &more),
        )
    };
    Row {
        name: "degree".into(),
        formula: Some(counting::DEGREE_FORMULA.into()),
        predicted: Some(Prediction {
            value: Some(predicted.join(", ")),
            ..Prediction::default()
        }),
        constructed: vec![],
        solver: None,
        observed: Some(format!(
            "{} of {} vertices agree",
            g.order() - bad.len(),
            g.order()
        )),
        verdict,
        reason,
        notes: vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, q: u32) -> VerifyConfig {
        VerifyConfig {
            n,
            field: FieldSpec::of_order(q).unwrap(),
            budget: Budget::seconds(30.0),
            build: BuildOptions::default(),
        }
    }

    fn row<'a>(r: &'a InvariantReport, name: &str) -> &'a Row {
        r.rows.iter().find(|x| x.name == name).unwrap()
    }

    #[test]
    fn verify_3_2_all_match() {
        let r = run_verify(&cfg(3, 2)).unwrap();
        assert!(!r.has_mismatch(), "{}", r.table());
        for name in [
            "connectivity",
            "degree",
            "perfect-matchings",
            "omega",
            "chi",
            "gamma",
            "alpha",
        ] {
            assert_eq!(row(&r, name).verdict, Verdict::Match, "{name}");
        }
        assert_eq!(row(&r, "omega").solver.as_ref().unwrap().value, Some(7));
        assert_eq!(row(&r, "gamma").solver.as_ref().unwrap().value, Some(3));
    }

    #[test]
    fn verify_4_2_within_bounds() {
        let r = run_verify(&cfg(4, 2)).unwrap();
        assert!(!r.has_mismatch(), "{}", r.table());
        let omega = row(&r, "omega");
        assert_eq!(omega.verdict, Verdict::WithinBounds);
        assert!(omega.notes.iter().any(|n| n == "exact value 22"));
        assert_eq!(row(&r, "alpha").verdict, Verdict::Match);
    }

    #[test]
    fn verify_2_2_edge_case() {
        let r = run_verify(&cfg(2, 2)).unwrap();
        assert!(!r.has_mismatch(), "{}", r.table());
        assert_eq!(row(&r, "connectivity").observed.as_deref(), Some("false"));
        assert_eq!(row(&r, "connectivity").verdict, Verdict::Match);
        assert_eq!(row(&r, "omega").verdict, Verdict::Skipped);
        assert!(row(&r, "alpha").notes.iter().any(|n| n.starts_with("edge case")));
    }

    #[test]
    fn judge_flags_contradictions() {
        let solver = SolverOutcome {
            solver: "x".into(),
            value: Some(5),
            lo: 5,
            hi: 5,
            status: Status::Proven,
            nodes: 0,
            certificate: String::new(),
        };
        let (v, _, _) = judge(&Claim::Exact(6), &[], &solver, true);
        assert_eq!(v, Verdict::Mismatch);
        let (v, _, _) = judge(&Claim::Exact(5), &[], &solver, true);
        assert_eq!(v, Verdict::Match);
        let (v, _, _) = judge(&Claim::Exact(5), &[], &solver, false);
        assert_eq!(v, Verdict::Mismatch);
        let (v, _, _) = judge(&Claim::Range(6, 9), &[], &solver, true);
        assert_eq!(v, Verdict::Mismatch);
        let too_many = Constructed {
            source: "c".into(),
            bound: BoundSide::Upper,
            value: Some(10),
            error: None,
        };
        let (v, _, _) = judge(&Claim::Range(4, 9), &[too_many], &solver, true);
        assert_eq!(v, Verdict::Mismatch);

        let open = SolverOutcome {
            value: None,
            lo: 3,
            hi: 8,
            status: Status::Timeout,
            ..solver
        };
        let (v, _, _) = judge(&Claim::Exact(5), &[], &open, true);
        assert_eq!(v, Verdict::WithinBounds);
        let pinned = [
            Constructed {
                source: "a".into(),
                bound: BoundSide::Lower,
                value: Some(5),
                error: None,
            },
            Constructed {
                source: "b".into(),
                bound: BoundSide::Upper,
                value: Some(5),
                error: None,
            },
        ];
        let (v, _, notes) = judge(&Claim::Exact(5), &pinned, &open, true);
        assert_eq!(v, Verdict::Match);
        assert_eq!(notes.len(), 1);
    }
}
