//! The intersection graph of the proper nontrivial subspaces of GF(q)^n.

mod dense;
pub mod io;

use std::ops::Range;

use thiserror::Error;

pub use dense::{DenseGraph, GraphStats};

use crate::bitset::BitSet;
use crate::counting::{self, BigCount};
use crate::gf::FieldSpec;
use crate::linalg::{self, Subspace, SubspaceId};
use crate::par;

pub const DEFAULT_MAX_VERTICES: usize = 5_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("the intersection graph needs n >= 2 (got {0})")]
    TooSmall(usize),
    #[error("graph would have {needed} vertices, above the cap of {cap}")]
    VertexCap { needed: BigCount, cap: usize },
    #[error("the graph has no vertices")]
    Empty,
    #[error("operation requires even n (got {0})")]
    OddDimension(usize),
    #[error("t = {t} is outside 1 <= t < n/2 for n = {n}")]
    BadLayer { n: usize, t: usize },
    #[error("disjointness graph for t = {t}: vertex {vertex} has degree {degree}, expected {expected}")]
    Irregular {
        t: usize,
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("dimension shortcut disagrees with rank computation at ({0}, {1})")]
    ShortcutMismatch(usize, usize),
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub max_vertices: usize,
    /// Compute adjacency rows on the rayon pool (needs the `parallel` feature).
    pub parallel: bool,
    /// Recheck the `dim u + dim w > n` adjacency shortcut with a rank
    /// computation.
    pub verify_shortcut: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
            parallel: false,
            verify_shortcut: cfg!(debug_assertions),
        }
    }
}

/// G(V) for V = GF(q)^n. Vertices are ordered by dimension, then by the
/// enumeration order within the dimension.
#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    n: usize,
    field: FieldSpec,
    vertices: Vec<Subspace>,
    /// `dim_offsets[t]` is the first vertex of dimension `t`, for
    /// `t = 1..=n`; `dim_offsets[n]` is the vertex count.
    dim_offsets: Vec<usize>,
    graph: DenseGraph,
}

/// A vertex subset together with the subgraph it induces.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    /// Parent vertex ids; local vertex `i` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub graph: DenseGraph,
}

/// Bipartite graph between `A_t` and `A_{n-t}` joining pairs that meet
/// trivially.
#[derive(Debug, Clone)]
pub struct BipartiteDisjointGraph {
    pub t: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// `adj[i]` lists right-local indices adjacent to left-local `i`.
    pub adj: Vec<Vec<usize>>,
    /// Common degree of every vertex on both sides.
    pub degree: usize,
}

impl BipartiteDisjointGraph {
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, left_vertex: usize, right_vertex: usize) -> bool {
        let (Some(i), Some(j)) = (
            self.left.iter().position(|&v| v == left_vertex),
            self.right.iter().position(|&v| v == right_vertex),
        ) else {
            return false;
        };
        self.adj[i].contains(&j)
    }
}

pub fn build_graph(
    field: &FieldSpec,
    n: usize,
    opts: &BuildOptions,
) -> Result<IntersectionGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall(n));
    }
    let needed = counting::vertex_count(n as u32, field.q() as u64);
    if needed > BigCount::from(opts.max_vertices) {
        return Err(GraphError::VertexCap {
            needed,
            cap: opts.max_vertices,
        });
    }

    let classes = par::map_range(n - 1, opts.parallel, |i| {
        linalg::enumerate_subspaces(field, n, i + 1).expect("dimension in range")
    });
    let mut dim_offsets = vec![0usize; n + 1];
    let mut vertices = Vec::new();
    for (i, class) in classes.into_iter().enumerate() {
        dim_offsets[i + 1] = vertices.len();
        vertices.extend(class);
    }
    dim_offsets[n] = vertices.len();
    dim_offsets[0] = 0;

    let graph = adjacency(field, n, &vertices, opts)?;
    Ok(IntersectionGraph {
        n,
        field: field.clone(),
        vertices,
        dim_offsets,
        graph,
    })
}

fn adjacency(
    field: &FieldSpec,
    n: usize,
    vertices: &[Subspace],
    opts: &BuildOptions,
) -> Result<DenseGraph, GraphError> {
    let count = vertices.len();
    let verify = opts.verify_shortcut;
    let rows = par::map_range(count, opts.parallel, |u| {
        let mut row = BitSet::new(count);
        let du = vertices[u].dim();
        for (w, other) in vertices.iter().enumerate() {
            if w == u {
                continue;
            }
            let forced = du + other.dim() > n;
            let meets = if forced && !verify {
                true
            } else {
                let meets = linalg::intersection_dim_unchecked(field, &vertices[u], other) >= 1;
                if forced && !meets {
                    return Err(GraphError::ShortcutMismatch(u, w));
                }
                meets
            };
            if meets {
                row.insert(w);
            }
        }
        Ok(row)
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(DenseGraph::from_rows(rows))
}

impl IntersectionGraph {
    /// Reassembles a graph from parts (used by the cache reader).
    pub(crate) fn from_parts(n: usize, field: FieldSpec, vertices: Vec<Subspace>, graph: DenseGraph) -> Self {
        let mut dim_offsets = vec![0usize; n + 1];
        for (t, off) in dim_offsets.iter_mut().enumerate().skip(1) {
            *off = vertices.iter().take_while(|s| s.dim() < t).count();
        }
        IntersectionGraph {
            n,
            field,
            vertices,
            dim_offsets,
            graph,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn subspace(&self, v: usize) -> &Subspace {
        &self.vertices[v]
    }

    pub fn dense(&self) -> &DenseGraph {
        &self.graph
    }

    /// Vertex ids of the dimension class `A_t` (empty outside `1..n`).
    pub fn class(&self, t: usize) -> Range<usize> {
        if t == 0 || t >= self.n {
            return 0..0;
        }
        self.dim_offsets[t]..self.dim_offsets[t + 1]
    }

    pub fn id_of(&self, v: usize) -> SubspaceId {
        let dim = self.vertices[v].dim();
        SubspaceId {
            dim,
            rank_index: v - self.dim_offsets[dim],
        }
    }

    pub fn index_of(&self, id: SubspaceId) -> Option<usize> {
        let r = self.class(id.dim);
        (id.rank_index < r.len()).then_some(r.start + id.rank_index)
    }

    /// Vertex id of a subspace (linear scan of its class).
    pub fn find(&self, s: &Subspace) -> Option<usize> {
        let r = self.class(s.dim());
        let start = r.start;
        self.vertices[r].iter().position(|x| x == s).map(|i| start + i)
    }

    pub fn label(&self, v: usize) -> String {
        self.id_of(v).to_string()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    pub fn stats(&self) -> GraphStats {
        self.graph.stats()
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        self.graph.is_connected().ok_or(GraphError::Empty)
    }

    /// `(G1, G2)`: the subgraph induced on `A_{n/2}` and the rest.
    pub fn induced_middle(&self) -> Result<(InducedSubgraph, InducedSubgraph), GraphError> {
        if self.n % 2 == 1 {
            return Err(GraphError::OddDimension(self.n));
        }
        let mid = self.class(self.n / 2);
        let inner: Vec<usize> = mid.clone().collect();
        let outer: Vec<usize> = (0..self.order()).filter(|v| !mid.contains(v)).collect();
        Ok((
            InducedSubgraph {
                graph: self.graph.induced(&inner),
                vertices: inner,
            },
            InducedSubgraph {
                graph: self.graph.induced(&outer),
                vertices: outer,
            },
        ))
    }

    /// The disjointness graph between `A_t` and `A_{n-t}`, checked to be
    /// `q^{t(n-t)}`-regular on both sides.
    pub fn disjointness_bipartite(&self, t: usize) -> Result<BipartiteDisjointGraph, GraphError> {
        if t == 0 || 2 * t >= self.n {
            return Err(GraphError::BadLayer { n: self.n, t });
        }
        let left: Vec<usize> = self.class(t).collect();
        let right: Vec<usize> = self.class(self.n - t).collect();
        let expected = (self.q() as usize).pow((t * (self.n - t)) as u32);
        let adj: Vec<Vec<usize>> = left
            .iter()
            .map(|&u| {
                right
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| !self.graph.has_edge(u, w))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        for (i, row) in adj.iter().enumerate() {
            if row.len() != expected {
                return Err(GraphError::Irregular {
                    t,
                    vertex: left[i],
                    degree: row.len(),
                    expected,
                });
            }
        }
        let mut right_deg = vec![0usize; right.len()];
        for row in &adj {
            for &j in row {
                right_deg[j] += 1;
            }
        }
        if let Some((j, &d)) = right_deg.iter().enumerate().find(|(_, &d)| d != expected) {
            return Err(GraphError::Irregular {
                t,
                vertex: right[j],
                degree: d,
                expected,
            });
        }
        Ok(BipartiteDisjointGraph {
            t,
            left,
            right,
            adj,
            degree: expected,
        })
    }
}
