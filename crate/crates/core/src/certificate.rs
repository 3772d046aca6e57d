//! Certificates for graph invariants and their verifier.
//!
//! The verifier only uses `has_edge` and plain loops, so it shares no code
//! with the bitset kernels in the solvers.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{BipartiteDisjointGraph, DenseGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Clique,
    Coloring,
    DominatingSet,
    IndependentSet,
    Matching,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Clique(Vec<usize>),
    /// Color of every vertex, indexed by vertex id.
    Coloring(Vec<usize>),
    DominatingSet(Vec<usize>),
    IndependentSet(Vec<usize>),
    /// Vertex pairs.
    Matching(Vec<(usize, usize)>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("vertex {0} is listed twice")]
    Repeated(usize),
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("{0} and {1} are adjacent")]
    Adjacent(usize, usize),
    #[error("vertex {0} is not dominated")]
    Undominated(usize),
    #[error("coloring has {got} entries for {expected} vertices")]
    ColoringLength { got: usize, expected: usize },
    #[error("adjacent vertices {0} and {1} share a color")]
    Conflict(usize, usize),
    #[error("pair ({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("certificate kind does not apply to this graph")]
    WrongKind,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::Clique(_) => CertificateKind::Clique,
            Certificate::Coloring(_) => CertificateKind::Coloring,
            Certificate::DominatingSet(_) => CertificateKind::DominatingSet,
            Certificate::IndependentSet(_) => CertificateKind::IndependentSet,
            Certificate::Matching(_) => CertificateKind::Matching,
        }
    }

    /// Set size, number of distinct colors, or number of matched pairs.
    pub fn value(&self) -> usize {
        match self {
            Certificate::Clique(s) | Certificate::DominatingSet(s) | Certificate::IndependentSet(s) => {
                s.len()
            }
            Certificate::Coloring(c) => c.iter().collect::<BTreeSet<_>>().len(),
            Certificate::Matching(m) => m.len(),
        }
    }

    /// Vertex members; for a coloring the per-vertex colors, for a matching
    /// the flattened pairs.
    pub fn members(&self) -> Vec<usize> {
        match self {
            Certificate::Clique(s)
            | Certificate::DominatingSet(s)
            | Certificate::IndependentSet(s)
            | Certificate::Coloring(s) => s.clone(),
            Certificate::Matching(m) => m.iter().flat_map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn record(&self, verified: bool) -> CertificateRecord {
        CertificateRecord {
            kind: self.kind(),
            members: self.members(),
            value: self.value(),
            verified,
        }
    }
}

/// Serializable form of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub kind: CertificateKind,
    pub members: Vec<usize>,
    pub value: usize,
    pub verified: bool,
}

fn distinct_in_range(set: &[usize], order: usize) -> Result<(), VerifyError> {
    let mut seen = vec![false; order];
    for &v in set {
        if v >= order {
            return Err(VerifyError::OutOfRange(v));
        }
        if seen[v] {
            return Err(VerifyError::Repeated(v));
        }
        seen[v] = true;
    }
    Ok(())
}

pub fn verify(cert: &Certificate, g: &DenseGraph) -> Result<(), VerifyError> {
    let order = g.order();
    match cert {
        Certificate::Clique(s) => {
            distinct_in_range(s, order)?;
            for (i, &u) in s.iter().enumerate() {
                for &v in &s[i + 1..] {
                    if !g.has_edge(u, v) {
                        return Err(VerifyError::NotAdjacent(u, v));
                    }
                }
            }
        }
        Certificate::IndependentSet(s) => {
            distinct_in_range(s, order)?;
            for (i, &u) in s.iter().enumerate() {
                for &v in &s[i + 1..] {
                    if g.has_edge(u, v) {
                        return Err(VerifyError::Adjacent(u, v));
                    }
                }
            }
        }
        Certificate::DominatingSet(s) => {
            distinct_in_range(s, order)?;
            for v in 0..order {
                if !s.iter().any(|&d| d == v || g.has_edge(d, v)) {
                    return Err(VerifyError::Undominated(v));
                }
            }
        }
        Certificate::Coloring(colors) => {
            if colors.len() != order {
                return Err(VerifyError::ColoringLength {
                    got: colors.len(),
                    expected: order,
                });
            }
            for u in 0..order {
                for v in u + 1..order {
                    if g.has_edge(u, v) && colors[u] == colors[v] {
                        return Err(VerifyError::Conflict(u, v));
                    }
                }
            }
        }
        Certificate::Matching(pairs) => {
            let flat: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            distinct_in_range(&flat, order)?;
            for &(a, b) in pairs {
                if !g.has_edge(a, b) {
                    return Err(VerifyError::NotAnEdge(a, b));
                }
            }
        }
    }
    Ok(())
}

/// Checks a matching of parent vertex ids `(left, right)` against a
/// disjointness graph.
pub fn verify_bipartite_matching(cert: &Certificate, b: &BipartiteDisjointGraph) -> Result<(), VerifyError> {
    let Certificate::Matching(pairs) = cert else {
        return Err(VerifyError::WrongKind);
    };
    let mut used = BTreeSet::new();
    for &(l, r) in pairs {
        if !used.insert(l) {
            return Err(VerifyError::Repeated(l));
        }
        if !used.insert(r) {
            return Err(VerifyError::Repeated(r));
        }
        if !b.has_edge(l, r) {
            return Err(VerifyError::NotAnEdge(l, r));
        }
    }
    Ok(())
}
