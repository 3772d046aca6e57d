//! Minimum dominating set by branching on closed neighborhoods.
//!
//! The lowest-id undominated vertex must be dominated by some member of its
//! closed neighborhood; each candidate is tried in turn and excluded from the
//! later sibling branches. Two lower bounds are used: a packing of
//! undominated vertices whose remaining candidate sets are pairwise
//! disjoint, and a counting bound over an independent set U of undominated
//! vertices, where each candidate can dominate only so many members of U.

use super::{Budget, Meter, SolveResult, Stop};
use crate::bitset::BitSet;
use crate::certificate::Certificate;
use crate::graph::DenseGraph;

struct Search<'a> {
    closed: Vec<BitSet>,
    meter: &'a Meter,
    best: Vec<usize>,
}

impl Search<'_> {
    /// Lower bound on the number of further vertices needed, or `None` if
    /// some undominated vertex has no candidate left.
    fn packing_bound(&self, dominated: &BitSet, forbidden: &BitSet) -> Option<usize> {
        let mut used = BitSet::new(dominated.len());
        let mut count = 0;
        for u in dominated.complement().iter() {
            let mut cand = self.closed[u].clone();
            cand.difference_with(forbidden);
            if cand.is_empty() {
                return None;
            }
            if !cand.intersects(&used) {
                used.union_with(&cand);
                count += 1;
            }
        }
        Some(count)
    }

    /// Smallest k such that the k candidates dominating the most members of
    /// a greedy independent set U of undominated vertices could cover U.
    fn cover_bound(&self, dominated: &BitSet, forbidden: &BitSet) -> Option<usize> {
        let open = dominated.complement();
        let mut order: Vec<usize> = open.iter().collect();
        order.sort_by_key(|&u| (self.closed[u].intersection_count(&open), u));
        let mut u_set = BitSet::new(dominated.len());
        let mut blocked = BitSet::new(dominated.len());
        for u in order {
            if !blocked.contains(u) {
                u_set.insert(u);
                blocked.union_with(&self.closed[u]);
            }
        }
        let mut reach: Vec<usize> = forbidden
            .complement()
            .iter()
            .map(|w| self.closed[w].intersection_count(&u_set))
            .filter(|&c| c > 0)
            .collect();
        reach.sort_unstable_by(|a, b| b.cmp(a));
        let need = u_set.count();
        let mut covered = 0;
        for (k, c) in reach.iter().enumerate() {
            if covered >= need {
                return Some(k);
            }
            covered += c;
        }
        (covered >= need).then_some(reach.len())
    }

    fn lower_bound(&self, dominated: &BitSet, forbidden: &BitSet) -> Option<usize> {
        let packing = self.packing_bound(dominated, forbidden)?;
        Some(packing.max(self.cover_bound(dominated, forbidden)?))
    }

    fn search(
        &mut self,
        chosen: &mut Vec<usize>,
        dominated: &BitSet,
        forbidden: &BitSet,
    ) -> Result<(), Stop> {
        self.meter.tick()?;
        let Some(u) = dominated.complement().first() else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return Ok(());
        };
        let Some(lb) = self.lower_bound(dominated, forbidden) else {
            return Ok(());
        };
        if chosen.len() + lb >= self.best.len() {
            return Ok(());
        }
        let mut cands: Vec<(usize, usize)> = self.closed[u]
            .iter()
            .filter(|&w| !forbidden.contains(w))
            .map(|w| {
                let mut gain = self.closed[w].clone();
                gain.difference_with(dominated);
                (w, gain.count())
            })
            .collect();
        cands.sort_by_key(|&(w, gain)| (std::cmp::Reverse(gain), w));

        let mut forbid = forbidden.clone();
        for (w, _) in cands {
            let mut next = dominated.clone();
            next.union_with(&self.closed[w]);
            chosen.push(w);
            let r = self.search(chosen, &next, &forbid);
            chosen.pop();
            r?;
            forbid.insert(w);
        }
        Ok(())
    }
}

fn greedy(closed: &[BitSet]) -> Vec<usize> {
    let n = closed.len();
    let mut dominated = BitSet::new(n);
    let mut chosen = Vec::new();
    while dominated.count() < n {
        let (w, _) = (0..n)
            .map(|w| {
                let mut gain = closed[w].clone();
                gain.difference_with(&dominated);
                (w, gain.count())
            })
            .max_by_key(|&(w, gain)| (gain, std::cmp::Reverse(w)))
            .unwrap();
        dominated.union_with(&closed[w]);
        chosen.push(w);
    }
    chosen
}

pub fn min_dominating_set(g: &DenseGraph, budget: &Budget) -> SolveResult {
    let meter = Meter::new(budget);
    let n = g.order();
    let closed: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut s = g.neighbors(v).clone();
            s.insert(v);
            s
        })
        .collect();
    let start = greedy(&closed);
    let mut search = Search {
        closed,
        meter: &meter,
        best: start,
    };
    let empty = BitSet::new(n);
    let root_lb = search.lower_bound(&empty, &empty).unwrap_or(0);
    let completed = root_lb == search.best.len() || search.search(&mut Vec::new(), &empty, &empty).is_ok();

    let mut best = search.best;
    best.sort_unstable();
    let hi = best.len();
    let lo = if completed { hi } else { root_lb };
    meter.finish(lo, hi, Certificate::DominatingSet(best), completed)
}
