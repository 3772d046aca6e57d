//! Maximum clique by bitset branch and bound with greedy-coloring bounds.
//!
//! Vertices are renumbered in degeneracy order. At each node the candidate
//! set is greedily partitioned into independent color classes; a vertex in
//! class `k` can extend the current clique by at most `k`, which prunes the
//! branch once `|C| + k` cannot beat the incumbent.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::{Budget, Meter, SolveResult, Stop};
use crate::bitset::BitSet;
use crate::certificate::Certificate;
use crate::graph::DenseGraph;
use crate::par;

struct Incumbent {
    len: AtomicUsize,
    members: Mutex<Vec<usize>>,
}

impl Incumbent {
    fn len(&self) -> usize {
        self.len.load(Ordering::Relaxed)
    }

    fn offer(&self, clique: &[usize]) {
        let mut m = self.members.lock().unwrap();
        if clique.len() > m.len() {
            *m = clique.to_vec();
            self.len.store(clique.len(), Ordering::Relaxed);
        }
    }
}

struct Search<'a> {
    /// Adjacency in search order.
    adj: Vec<BitSet>,
    meter: &'a Meter,
    best: Incumbent,
}

/// Degeneracy order: repeatedly strip a minimum-degree vertex (lowest id on
/// ties) and place it last.
fn degeneracy_order(g: &DenseGraph) -> Vec<usize> {
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = BitSet::full(n);
    let mut order = vec![0; n];
    for slot in (0..n).rev() {
        let v = alive.iter().min_by_key(|&v| (deg[v], v)).unwrap();
        order[slot] = v;
        alive.remove(v);
        for w in g.neighbors(v).intersection(&alive).iter() {
            deg[w] -= 1;
        }
    }
    order
}

impl Search<'_> {
    /// Greedy sequential coloring of `p`. Returns the vertices whose color
    /// exceeds `skip_below`, in nondecreasing color order, with their colors.
    fn color_sort(&self, p: &BitSet, skip_below: usize) -> (Vec<usize>, Vec<usize>) {
        let mut verts = Vec::new();
        let mut colors = Vec::new();
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                uncolored.remove(v);
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                if k > skip_below {
                    verts.push(v);
                    colors.push(k);
                }
            }
        }
        (verts, colors)
    }

    fn expand(&self, clique: &mut Vec<usize>, mut p: BitSet) -> Result<(), Stop> {
        self.meter.tick()?;
        let floor = self.best.len().saturating_sub(clique.len());
        let (verts, colors) = self.color_sort(&p, floor);
        for i in (0..verts.len()).rev() {
            if clique.len() + colors[i] <= self.best.len() {
                return Ok(());
            }
            let v = verts[i];
            clique.push(v);
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                self.best.offer(clique);
            } else {
                self.expand(clique, next)?;
            }
            clique.pop();
            p.remove(v);
        }
        Ok(())
    }
}

pub(crate) fn clique_with_meter(g: &DenseGraph, meter: &Meter) -> SolveResult {
    let n = g.order();
    if n == 0 {
        return meter.finish(0, 0, Certificate::Clique(vec![]), true);
    }
    let order = degeneracy_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<BitSet> = order
        .iter()
        .map(|&v| BitSet::from_indices(n, g.neighbors(v).iter().map(|w| pos[w])))
        .collect();

    // greedy start: scan in search order
    let mut start = Vec::new();
    let mut cand = BitSet::full(n);
    while let Some(v) = cand.first() {
        start.push(v);
        cand.intersect_with(&adj[v]);
    }

    let search = Search {
        adj,
        meter,
        best: Incumbent {
            len: AtomicUsize::new(start.len()),
            members: Mutex::new(start),
        },
    };

    // Root level: branch i explores cliques whose search-order-last vertex
    // is verts[i]; the sequential path runs them from the back, which is the
    // classic loop.
    let root = BitSet::full(n);
    let floor = search.best.len();
    let (verts, colors) = search.color_sort(&root, floor);
    let len = verts.len();
    let outcomes = par::map_range(len, meter.parallel(), |r| {
        let i = len - 1 - r;
        if colors[i] < search.best.len() {
            return Ok(());
        }
        let mut p = root.intersection(&search.adj[verts[i]]);
        for &later in &verts[i + 1..] {
            p.remove(later);
        }
        let mut clique = vec![verts[i]];
        if p.is_empty() {
            search.best.offer(&clique);
            Ok(())
        } else {
            search.expand(&mut clique, p)
        }
    });

    let best_members: Vec<usize> = {
        let m = search.best.members.lock().unwrap();
        let mut out: Vec<usize> = m.iter().map(|&i| order[i]).collect();
        out.sort_unstable();
        out
    };
    let lo = best_members.len();
    // Unfinished root branches can still hold cliques of size up to their
    // color; everything else has been ruled out.
    let open = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.is_err())
        .map(|(r, _)| colors[len - 1 - r])
        .max();
    let completed = open.is_none();
    let hi = open.map_or(lo, |k| k.max(lo));
    meter.finish(lo, hi, Certificate::Clique(best_members), completed)
}

pub fn max_clique(g: &DenseGraph, budget: &Budget) -> SolveResult {
    clique_with_meter(g, &Meter::new(budget))
}

/// Maximum independent set, as a maximum clique of the complement.
pub fn max_independent_set(g: &DenseGraph, budget: &Budget) -> SolveResult {
    let mut r = max_clique(&g.complement(), budget);
    if let Certificate::Clique(s) = r.certificate {
        r.certificate = Certificate::IndependentSet(s);
    }
    r
}
