//! Exact and heuristic solvers used as independent oracles.
//!
//! All searches tie-break by lowest vertex id, so sequential runs are
//! reproducible. Budgets combine a wall-clock limit with a node cap.

mod clique;
mod coloring;
mod domination;
mod matching;

use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

pub use clique::{max_clique, max_independent_set};
pub use coloring::{brooks_coloring, chromatic_number, dsatur_coloring, BrooksError};
pub use domination::min_dominating_set;
pub use matching::{hopcroft_karp, maximum_matching, MatchingError};

use crate::certificate::Certificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The search space was exhausted; `lo == hi`.
    Proven,
    /// The node cap was reached.
    Bounded,
    /// The wall-clock budget ran out.
    Timeout,
}

#[derive(Debug, Clone)]
pub struct Budget {
    pub time: Option<Duration>,
    pub max_nodes: Option<u64>,
    /// Explore root branches on the rayon pool (clique searches only).
    pub parallel: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            time: Some(Duration::from_secs(60)),
            max_nodes: None,
            parallel: false,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            time: None,
            max_nodes: None,
            parallel: false,
        }
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            time: Some(Duration::from_secs_f64(s)),
            ..Budget::unlimited()
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Optimal value, when proven.
    pub value: Option<usize>,
    pub lo: usize,
    pub hi: usize,
    pub certificate: Certificate,
    pub status: Status,
    pub elapsed: Duration,
    pub nodes: u64,
}

impl SolveResult {
    pub fn is_proven(&self) -> bool {
        self.status == Status::Proven
    }
}

/// Search was cut short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Stop;

const STOP_NONE: u8 = 0;
const STOP_TIME: u8 = 1;
const STOP_NODES: u8 = 2;

/// Node counter and stop flag shared by every worker of one solve.
pub(crate) struct Meter {
    start: Instant,
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    nodes: AtomicU64,
    stop: AtomicU8,
    parallel: bool,
}

impl Meter {
    pub(crate) fn new(budget: &Budget) -> Self {
        let start = Instant::now();
        Meter {
            start,
            deadline: budget.time.map(|t| start + t),
            max_nodes: budget.max_nodes,
            nodes: AtomicU64::new(0),
            stop: AtomicU8::new(STOP_NONE),
            parallel: budget.parallel,
        }
    }

    pub(crate) fn parallel(&self) -> bool {
        self.parallel
    }

    /// Counts one node; fails once the budget is exhausted.
    #[inline]
    pub(crate) fn tick(&self) -> Result<(), Stop> {
        if self.stop.load(Ordering::Relaxed) != STOP_NONE {
            return Err(Stop);
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.max_nodes.is_some_and(|m| n > m) {
            self.stop.store(STOP_NODES, Ordering::Relaxed);
            return Err(Stop);
        }
        if n.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(STOP_TIME, Ordering::Relaxed);
                    return Err(Stop);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    /// Status for a search that ended with `completed`.
    pub(crate) fn status(&self, completed: bool) -> Status {
        if completed {
            return Status::Proven;
        }
        match self.stop.load(Ordering::Relaxed) {
            STOP_NODES => Status::Bounded,
            _ => Status::Timeout,
        }
    }

    pub(crate) fn finish(
        &self,
        lo: usize,
        hi: usize,
        certificate: Certificate,
        completed: bool,
    ) -> SolveResult {
        let status = self.status(completed && lo == hi);
        SolveResult {
            value: (status == Status::Proven).then_some(lo),
            lo,
            hi,
            certificate,
            status,
            elapsed: self.elapsed(),
            nodes: self.nodes(),
        }
    }
}
