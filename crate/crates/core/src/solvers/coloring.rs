//! Vertex coloring: DSATUR heuristic, exact DSATUR branch and bound, and a
//! Brooks-bound coloring with a constructive fallback.

use thiserror::Error;

use super::clique::clique_with_meter;
use super::{Budget, Meter, SolveResult, Stop};
use crate::bitset::BitSet;
use crate::certificate::Certificate;
use crate::graph::DenseGraph;

/// Saturation bookkeeping shared by the heuristic and the exact search.
struct Dsatur<'a> {
    g: &'a DenseGraph,
    color: Vec<Option<usize>>,
    /// `counts[v * width + c]`: neighbors of `v` holding color `c`.
    counts: Vec<u32>,
    sat: Vec<usize>,
    width: usize,
    uncolored: BitSet,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a DenseGraph, width: usize) -> Self {
        let n = g.order();
        Dsatur {
            g,
            color: vec![None; n],
            counts: vec![0; n * width.max(1)],
            sat: vec![0; n],
            width: width.max(1),
            uncolored: BitSet::full(n),
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = Some(c);
        self.uncolored.remove(v);
        for w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.width + c];
            if *slot == 0 {
                self.sat[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v].take().unwrap();
        self.uncolored.insert(v);
        for w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.width + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    #[inline]
    fn allowed(&self, v: usize, c: usize) -> bool {
        self.counts[v * self.width + c] == 0
    }

    /// Uncolored vertex of maximum saturation, then maximum degree into the
    /// uncolored part, then lowest id.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in &self.uncolored {
            let key = (
                self.sat[v],
                self.g.neighbors(v).intersection_count(&self.uncolored),
            );
            if best.is_none_or(|(s, d, _)| key > (s, d)) {
                best = Some((key.0, key.1, v));
            }
        }
        best.map(|b| b.2)
    }

    fn colors(&self) -> Vec<usize> {
        self.color.iter().map(|c| c.unwrap()).collect()
    }
}

/// Greedy DSATUR coloring; always proper.
pub fn dsatur_coloring(g: &DenseGraph) -> Certificate {
    let n = g.order();
    let mut s = Dsatur::new(g, n);
    while let Some(v) = s.pick() {
        let c = (0..n).find(|&c| s.allowed(v, c)).unwrap();
        s.assign(v, c);
    }
    Certificate::Coloring(s.colors())
}

fn color_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |&m| m + 1)
}

struct Exact<'a> {
    state: Dsatur<'a>,
    meter: &'a Meter,
    lower: usize,
    best: usize,
    best_colors: Vec<usize>,
}

impl Exact<'_> {
    fn search(&mut self, used: usize) -> Result<(), Stop> {
        self.meter.tick()?;
        let Some(v) = self.state.pick() else {
            if used < self.best {
                self.best = used;
                self.best_colors = self.state.colors();
            }
            return Ok(());
        };
        // try existing colors, then one fresh color, staying below the
        // incumbent
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if !self.state.allowed(v, c) {
                continue;
            }
            self.state.assign(v, c);
            let r = self.search(used.max(c + 1));
            self.state.unassign(v);
            r?;
            if self.best <= self.lower {
                break;
            }
        }
        Ok(())
    }
}

/// Exact chromatic number: clique lower bound, DSATUR upper bound, and a
/// DSATUR-ordered branch and bound to close the gap.
pub fn chromatic_number(g: &DenseGraph, budget: &Budget) -> SolveResult {
    let meter = Meter::new(budget);
    let n = g.order();
    if n == 0 {
        return meter.finish(0, 0, Certificate::Coloring(vec![]), true);
    }
    let clique = clique_with_meter(g, &meter);
    let Certificate::Clique(members) = &clique.certificate else {
        unreachable!()
    };
    let heuristic = match dsatur_coloring(g) {
        Certificate::Coloring(c) => c,
        _ => unreachable!(),
    };
    let mut best = color_count(&heuristic);
    let mut best_colors = heuristic;
    // a clique of size k certifies k colors even when the clique search was
    // cut short
    let lower = members.len();
    let mut completed = lower == best;

    if !completed {
        let mut exact = Exact {
            state: Dsatur::new(g, best),
            meter: &meter,
            lower,
            best,
            best_colors: best_colors.clone(),
        };
        // the clique takes distinct colors in any coloring
        for (c, &v) in members.iter().enumerate() {
            exact.state.assign(v, c);
        }
        completed = exact.search(members.len()).is_ok();
        best = exact.best;
        best_colors = exact.best_colors;
    }
    let lo = if completed { best } else { lower };
    meter.finish(lo, best, Certificate::Coloring(best_colors), completed)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrooksError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is complete")]
    Complete,
    #[error("graph is an odd cycle")]
    OddCycle,
    #[error("no admissible vertex triple found (graph is not 2-connected as assumed)")]
    NoTriple,
}

/// Proper coloring with at most `Δ(g)` colors for a connected graph that
/// is neither complete nor an odd cycle.
pub fn brooks_coloring(g: &DenseGraph) -> Result<Certificate, BrooksError> {
    check_brooks(g)?;
    let delta = g.max_degree();
    let first = dsatur_coloring(g);
    let colors = if first.value() <= delta {
        first
    } else {
        brooks_constructive(g)?
    };
    assert!(colors.value() <= delta, "Brooks bound violated");
    Ok(colors)
}

fn check_brooks(g: &DenseGraph) -> Result<(), BrooksError> {
    if g.is_connected() != Some(true) {
        return Err(BrooksError::NotConnected);
    }
    if g.is_complete() {
        return Err(BrooksError::Complete);
    }
    if g.is_odd_cycle() {
        return Err(BrooksError::OddCycle);
    }
    Ok(())
}

/// Vertices of `within` ordered by breadth-first distance from `root`,
/// farthest first (ties by lowest id), so every vertex but `root` has a
/// neighbor later in the order.
fn far_first_order(g: &DenseGraph, root: usize, within: &BitSet) -> Vec<usize> {
    let mut layers = vec![vec![root]];
    let mut seen = BitSet::new(g.order());
    seen.insert(root);
    loop {
        let mut next = BitSet::new(g.order());
        for &v in layers.last().unwrap() {
            next.union_with(g.neighbors(v));
        }
        next.intersect_with(within);
        next.difference_with(&seen);
        if next.is_empty() {
            break;
        }
        seen.union_with(&next);
        layers.push(next.iter().collect());
    }
    layers.into_iter().rev().flatten().collect()
}

fn greedy_in_order(g: &DenseGraph, order: &[usize], colors: &mut [Option<usize>]) {
    for &v in order {
        let taken: Vec<usize> = g.neighbors(v).iter().filter_map(|w| colors[w]).collect();
        let c = (0..).find(|c| !taken.contains(c)).unwrap();
        colors[v] = Some(c);
    }
}

/// Lovász-style constructive Brooks coloring.
pub(crate) fn brooks_constructive(g: &DenseGraph) -> Result<Certificate, BrooksError> {
    check_brooks(g)?;
    let n = g.order();
    let delta = g.max_degree();
    let all = BitSet::full(n);
    let mut colors: Vec<Option<usize>> = vec![None; n];

    if delta <= 2 {
        // a path or an even cycle: two colors by BFS parity
        let mut depth = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([0usize]);
        depth[0] = 0;
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        return Ok(Certificate::Coloring(depth.iter().map(|d| d % 2).collect()));
    }

    // a vertex of degree below Δ goes last
    if let Some(root) = (0..n).find(|&v| g.degree(v) < delta) {
        greedy_in_order(g, &far_first_order(g, root, &all), &mut colors);
        return Ok(Certificate::Coloring(
            colors.into_iter().map(Option::unwrap).collect(),
        ));
    }

    // Δ-regular. With a cut vertex, color each piece hanging off it
    // separately (the cut vertex has degree < Δ inside every piece), then
    // align the pieces on the cut vertex's color.
    if let Some(cut) = (0..n).find(|&v| {
        let mut rest = all.clone();
        rest.remove(v);
        let start = rest.first().unwrap();
        g.reachable_within(start, &rest).count() < n - 1
    }) {
        let mut rest = all.clone();
        rest.remove(cut);
        let mut final_colors = vec![usize::MAX; n];
        final_colors[cut] = 0;
        while let Some(s) = rest.first() {
            let comp = g.reachable_within(s, &rest);
            rest.difference_with(&comp);
            let mut piece = comp.clone();
            piece.insert(cut);
            let mut local: Vec<Option<usize>> = vec![None; n];
            greedy_in_order(g, &far_first_order(g, cut, &piece), &mut local);
            // swap colors so the cut vertex gets color 0
            let cc = local[cut].unwrap();
            for v in &piece {
                let c = local[v].unwrap();
                final_colors[v] = if c == cc {
                    0
                } else if c == 0 {
                    cc
                } else {
                    c
                };
            }
        }
        return Ok(Certificate::Coloring(final_colors));
    }

    // 2-connected and Δ-regular: find x with non-adjacent neighbors y, z
    // such that removing y and z keeps the graph connected
    for x in 0..n {
        let nbrs: Vec<usize> = g.neighbors(x).iter().collect();
        for (i, &y) in nbrs.iter().enumerate() {
            for &z in &nbrs[i + 1..] {
                if g.has_edge(y, z) {
                    continue;
                }
                let mut rest = all.clone();
                rest.remove(y);
                rest.remove(z);
                if g.reachable_within(x, &rest).count() != n - 2 {
                    continue;
                }
                colors[y] = Some(0);
                colors[z] = Some(0);
                greedy_in_order(g, &far_first_order(g, x, &rest), &mut colors);
                return Ok(Certificate::Coloring(
                    colors.into_iter().map(Option::unwrap).collect(),
                ));
            }
        }
    }
    Err(BrooksError::NoTriple)
}
