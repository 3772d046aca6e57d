//! Exact or best-bound clique numbers for even n against the closed-form
//! range.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use subspace_graph::counting::{self, BigCount};
use subspace_graph::graph::GraphError;
use subspace_graph::solvers::{self, Budget, Status};
use subspace_graph::{BuildOptions, FieldSpec};

#[derive(Debug, Clone, Serialize)]
pub struct CensusTiming {
    pub build: f64,
    pub solve: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub p: u32,
    pub e: u32,
    pub q: u32,
    #[serde(serialize_with = "as_string")]
    pub vertex_count: BigCount,
    pub predicted_lo: Option<String>,
    pub predicted_hi: Option<String>,
    /// Proven clique number.
    pub omega: Option<usize>,
    pub omega_lo: Option<usize>,
    pub omega_hi: Option<usize>,
    /// `proven`, `bounded`, `timeout` or `skipped`.
    pub status: String,
    pub reason: Option<String>,
    /// Whether the certified range lies inside the predicted one.
    pub within_bounds: Option<bool>,
    pub lower_bound_tight: Option<bool>,
    pub clique: Option<Vec<usize>>,
    pub timing: CensusTiming,
}

fn as_string<S: serde::Serializer>(c: &BigCount, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

impl CensusRow {
    fn skipped(n: usize, field: &FieldSpec, reason: String) -> Self {
        CensusRow {
            n,
            p: field.p(),
            e: field.e(),
            q: field.q(),
            vertex_count: counting::vertex_count(n as u32, field.q() as u64),
            predicted_lo: None,
            predicted_hi: None,
            omega: None,
            omega_lo: None,
            omega_hi: None,
            status: "skipped".into(),
            reason: Some(reason),
            within_bounds: None,
            lower_bound_tight: None,
            clique: None,
            timing: CensusTiming {
                build: 0.0,
                solve: 0.0,
            },
        }
    }

    /// A census row is inconsistent when a finished search lands outside the
    /// predicted range.
    pub fn is_mismatch(&self) -> bool {
        self.within_bounds == Some(false)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("row serializes")
    }
}

/// One census entry. Odd n and n = 2 are recorded as skipped.
pub fn census_row(n: usize, field: &FieldSpec, budget: &Budget, build: &BuildOptions) -> CensusRow {
    if n % 2 == 1 {
        return CensusRow::skipped(n, field, "odd n: clique number is exact by formula".into());
    }
    let q = field.q() as u64;
    let predicted = match counting::predicted_invariants(n as u32, q) {
        Ok(p) => p,
        Err(e) => return CensusRow::skipped(n, field, e.to_string()),
    };
    let (Some(lo), Some(hi)) = (predicted.omega_even_lo, predicted.omega_even_hi) else {
        return CensusRow::skipped(n, field, predicted.edge_case.unwrap_or_default());
    };

    let t = Instant::now();
    let g = match subspace_graph::build_graph(field, n, build) {
        Ok(g) => g,
        Err(e @ GraphError::VertexCap { .. }) => {
            let mut row = CensusRow::skipped(n, field, e.to_string());
            row.predicted_lo = Some(lo.to_string());
            row.predicted_hi = Some(hi.to_string());
            return row;
        }
        Err(e) => return CensusRow::skipped(n, field, e.to_string()),
    };
    let build_time = t.elapsed().as_secs_f64();
    let r = solvers::max_clique(g.dense(), budget);
    let status = match r.status {
        Status::Proven => "proven",
        Status::Bounded => "bounded",
        Status::Timeout => "timeout",
    };
    let (l, h) = (BigCount::from(r.lo), BigCount::from(r.hi));
    let within = if r.is_proven() {
        lo <= l && l <= hi
    } else {
        // an open search is only inconsistent if its range misses entirely
        !(h < lo || l > hi)
    };
    CensusRow {
        n,
        p: field.p(),
        e: field.e(),
        q: field.q(),
        vertex_count: BigCount::from(g.order()),
        predicted_lo: Some(lo.to_string()),
        predicted_hi: Some(hi.to_string()),
        omega: r.value,
        omega_lo: Some(r.lo),
        omega_hi: Some(r.hi),
        status: status.into(),
        reason: None,
        within_bounds: Some(within),
        lower_bound_tight: r.value.map(|v| BigCount::from(v) == lo),
        clique: Some(r.certificate.members()),
        timing: CensusTiming {
            build: build_time,
            solve: r.elapsed.as_secs_f64(),
        },
    }
}

pub fn table(rows: &[CensusRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<4} {:<4} {:<9} {:<10} {:<14} {:<10} status",
        "n", "q", "vertices", "lo", "omega", "hi"
    );
    for r in rows {
        let omega = match (r.omega, r.omega_lo, r.omega_hi) {
            (Some(v), _, _) => v.to_string(),
            (None, Some(a), Some(b)) => format!("[{a}, {b}]"),
            _ => "-".into(),
        };
        let mut status = r.status.clone();
        if let Some(reason) = &r.reason {
            let _ = write!(status, " ({reason})");
        }
        if r.is_mismatch() {
            status.push_str(" MISMATCH");
        }
        let _ = writeln!(
            out,
            "{:<4} {:<4} {:<9} {:<10} {:<14} {:<10} {}",
            r.n,
            r.q,
            r.vertex_count,
            r.predicted_lo.as_deref().unwrap_or("-"),
            omega,
            r.predicted_hi.as_deref().unwrap_or("-"),
            status
        );
    }
    out
}
