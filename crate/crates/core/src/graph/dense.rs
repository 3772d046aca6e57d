use serde::Serialize;

use crate::bitset::BitSet;

/// Simple undirected graph on `0..order` with one adjacency bitset per
/// vertex. The solvers work on this type directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    adj: Vec<BitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    /// `None` for the empty graph.
    pub connected: Option<bool>,
}

impl DenseGraph {
    pub fn new(order: usize) -> Self {
        DenseGraph {
            adj: vec![BitSet::new(order); order],
        }
    }

    /// Builds from adjacency rows. Rows must be symmetric and irreflexive.
    pub fn from_rows(adj: Vec<BitSet>) -> Self {
        let g = DenseGraph { adj };
        debug_assert!(g.is_simple());
        g
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(order);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(order: usize) -> Self {
        Self::from_edges(
            order,
            (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v))),
        )
    }

    pub fn cycle(order: usize) -> Self {
        Self::from_edges(order, (0..order).map(|u| (u, (u + 1) % order)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Symmetric and irreflexive.
    pub fn is_simple(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, row)| {
            row.len() == self.order() && !row.contains(u) && row.iter().all(|v| self.adj[v].contains(u))
        })
    }

    pub fn complement(&self) -> DenseGraph {
        let n = self.order();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, row)| {
                let mut c = row.complement();
                c.remove(u);
                c
            })
            .collect();
        debug_assert_eq!(n, self.order());
        DenseGraph { adj }
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> DenseGraph {
        let k = vertices.len();
        let adj = vertices
            .iter()
            .map(|&u| {
                BitSet::from_indices(
                    k,
                    vertices
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| self.adj[u].contains(v))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        DenseGraph { adj }
    }

    /// Vertices reachable from `start` (breadth first), restricted to `allowed`.
    pub fn reachable_within(&self, start: usize, allowed: &BitSet) -> BitSet {
        let mut seen = BitSet::new(self.order());
        seen.insert(start);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = BitSet::new(self.order());
            for v in &frontier {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(allowed);
            next.difference_with(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    /// Breadth-first connectivity from vertex 0; `None` for the empty graph.
    pub fn is_connected(&self) -> Option<bool> {
        if self.order() == 0 {
            return None;
        }
        let all = BitSet::full(self.order());
        Some(self.reachable_within(0, &all).count() == self.order())
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        (0..n).all(|v| self.degree(v) == n - 1)
    }

    pub fn is_odd_cycle(&self) -> bool {
        let n = self.order();
        n >= 3 && n % 2 == 1 && (0..n).all(|v| self.degree(v) == 2) && self.is_connected() == Some(true)
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            vertices: self.order(),
            edges: self.edge_count(),
            max_degree: self.max_degree(),
            min_degree: self.min_degree(),
            connected: self.is_connected(),
        }
    }
}
