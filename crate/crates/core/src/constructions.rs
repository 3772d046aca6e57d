//! Explicit certificates: the half-dimension clique, the matching-based
//! colorings, the hyperplane dominating set and the independent set of lines.
//! Every certificate is checked with the shared verifier before it is
//! returned.

use serde::Serialize;
use thiserror::Error;

use crate::certificate::{self, Certificate, VerifyError};
use crate::counting::{self, BigCount};
use crate::graph::{GraphError, IntersectionGraph};
use crate::linalg::{self, all_vectors};
use crate::solvers::{self, MatchingError};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("construction needs {expected} n (got n = {n})")]
    Parity { n: usize, expected: &'static str },
    #[error("construction needs n >= {min} (got n = {n})")]
    TooSmall { n: usize, min: usize },
    #[error("vertex {vertex} has dimension {got}, expected {expected}")]
    BadDimension {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("{what}: constructed size {got} differs from the formula value {expected}")]
    CountMismatch {
        what: &'static str,
        got: usize,
        expected: BigCount,
    },
    #[error("certificate failed verification: {0}")]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("hyperplanes through the chosen subspace miss vector {0:?}")]
    NotCovering(Vec<u8>),
}

fn check_size(what: &'static str, got: usize, expected: BigCount) -> Result<(), ConstructionError> {
    if BigCount::from(got) == expected {
        Ok(())
    } else {
        Err(ConstructionError::CountMismatch { what, got, expected })
    }
}

fn verified(cert: Certificate, g: &IntersectionGraph) -> Result<Certificate, ConstructionError> {
    certificate::verify(&cert, g.dense())?;
    Ok(cert)
}

fn q(g: &IntersectionGraph) -> u64 {
    g.q() as u64
}

/// All vertices of dimension above n/2 (n odd): a clique of size
/// `sum_{i=1}^{floor(n/2)} [n,i]_q`.
pub fn half_dim_clique(g: &IntersectionGraph) -> Result<Certificate, ConstructionError> {
    let n = g.n();
    if n.is_multiple_of(2) {
        return Err(ConstructionError::Parity { n, expected: "odd" });
    }
    let members: Vec<usize> = (n / 2 + 1..n).flat_map(|t| g.class(t)).collect();
    let expected = (1..=n as u32 / 2)
        .map(|i| counting::gaussian_binomial(n as u32, i, q(g)))
        .sum();
    check_size("half-dimension clique", members.len(), expected)?;
    verified(Certificate::Clique(members), g)
}

/// A coloring assembled from perfect matchings of the disjointness graphs.
#[derive(Debug, Clone)]
pub struct MatchingColoring {
    /// `(t, perfect matching of A_t against A_{n-t})`.
    pub matchings: Vec<(usize, Certificate)>,
    /// Color of every vertex. Colors below the vertex count name the
    /// low-dimensional subspace whose color is shared; larger ids come from
    /// the fresh palette used for the middle layer.
    pub coloring: Certificate,
    pub color_count: usize,
}

/// Perfect matchings keyed by the low dimension t.
type Matchings = Vec<(usize, Certificate)>;

/// Colors every vertex of dimension `< n/2` by itself and every vertex of
/// dimension `n - t` by its partner in a perfect matching of the
/// disjointness graph for `t`. Vertices of dimension exactly n/2 are left
/// as `None`.
fn matching_colors(g: &IntersectionGraph) -> Result<(Matchings, Vec<Option<usize>>), ConstructionError> {
    let n = g.n();
    let mut colors: Vec<Option<usize>> = vec![None; g.order()];
    let mut matchings = Vec::new();
    for t in (1..n).take_while(|&t| 2 * t < n) {
        for v in g.class(t) {
            colors[v] = Some(v);
        }
        let b = g.disjointness_bipartite(t)?;
        let m = solvers::hopcroft_karp(&b)?;
        certificate::verify_bipartite_matching(&m, &b)?;
        if let Certificate::Matching(pairs) = &m {
            for &(low, high) in pairs {
                colors[high] = Some(low);
            }
        }
        matchings.push((t, m));
    }
    Ok((matchings, colors))
}

pub fn matching_coloring_odd(g: &IntersectionGraph) -> Result<MatchingColoring, ConstructionError> {
    let n = g.n();
    if n.is_multiple_of(2) {
        return Err(ConstructionError::Parity { n, expected: "odd" });
    }
    if n < 3 {
        return Err(ConstructionError::TooSmall { n, min: 3 });
    }
    let (matchings, colors) = matching_colors(g)?;
    let colors: Vec<usize> = colors
        .into_iter()
        .map(|c| c.expect("every class is matched"))
        .collect();
    let coloring = verified(Certificate::Coloring(colors), g)?;
    let color_count = coloring.value();
    let expected = (1..=n as u32 / 2)
        .map(|i| counting::gaussian_binomial(n as u32, i, q(g)))
        .sum();
    check_size("matching coloring", color_count, expected)?;
    Ok(MatchingColoring {
        matchings,
        coloring,
        color_count,
    })
}

/// Vertices of dimension above n/2 plus the n/2-dimensional vertices
/// containing `line` (n even).
pub fn even_clique_lower(g: &IntersectionGraph, line: usize) -> Result<Certificate, ConstructionError> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(ConstructionError::Parity { n, expected: "even" });
    }
    if n < 4 {
        return Err(ConstructionError::TooSmall { n, min: 4 });
    }
    let l = g.subspace(line);
    if l.dim() != 1 {
        return Err(ConstructionError::BadDimension {
            vertex: line,
            got: l.dim(),
            expected: 1,
        });
    }
    let f = g.field();
    let mut members: Vec<usize> = g
        .class(n / 2)
        .filter(|&v| linalg::is_subspace_of(f, l, g.subspace(v)).unwrap())
        .collect();
    members.extend((n / 2 + 1..n).flat_map(|t| g.class(t)));
    let nn = n as u32;
    let expected = (1..nn / 2)
        .map(|i| counting::gaussian_binomial(nn, i, q(g)))
        .sum::<BigCount>()
        + counting::gaussian_binomial(nn - 1, (nn - 2) / 2, q(g));
    check_size("even-n clique", members.len(), expected)?;
    verified(Certificate::Clique(members), g)
}

/// How the middle layer was colored.
#[derive(Debug, Clone, Serialize)]
pub struct MiddleLayerColoring {
    pub colors: usize,
    pub max_degree: usize,
    /// `None` when the Brooks hypotheses held; otherwise the failed one, in
    /// which case DSATUR was used instead.
    pub brooks_failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct EvenColoring {
    pub coloring: MatchingColoring,
    /// Colors used outside the middle layer.
    pub outer_colors: usize,
    pub middle: MiddleLayerColoring,
}

/// Colors the non-middle part with the matching scheme and the middle layer
/// `A_{n/2}` with at most `Δ(G1)` fresh colors (n even).
pub fn even_coloring_upper(g: &IntersectionGraph) -> Result<EvenColoring, ConstructionError> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(ConstructionError::Parity { n, expected: "even" });
    }
    if n < 4 {
        return Err(ConstructionError::TooSmall { n, min: 4 });
    }
    let (matchings, mut colors) = matching_colors(g)?;
    let outer: Vec<usize> = colors.iter().flatten().copied().collect();
    let outer_colors = outer.iter().collect::<std::collections::BTreeSet<_>>().len();

    let (middle, _) = g.induced_middle()?;
    let max_degree = middle.graph.max_degree();
    let (local, brooks_failure) = match solvers::brooks_coloring(&middle.graph) {
        Ok(c) => (c, None),
        Err(e) => (solvers::dsatur_coloring(&middle.graph), Some(e.to_string())),
    };
    let Certificate::Coloring(local) = &local else {
        unreachable!()
    };
    let palette = g.order();
    for (i, &v) in middle.vertices.iter().enumerate() {
        colors[v] = Some(palette + local[i]);
    }
    let colors: Vec<usize> = colors.into_iter().map(Option::unwrap).collect();
    let coloring = verified(Certificate::Coloring(colors), g)?;
    let color_count = coloring.value();
    Ok(EvenColoring {
        coloring: MatchingColoring {
            matchings,
            coloring,
            color_count,
        },
        outer_colors,
        middle: MiddleLayerColoring {
            colors: color_count - outer_colors,
            max_degree,
            brooks_failure,
        },
    })
}

/// The q+1 hyperplanes through the (n-2)-dimensional vertex `w`. Their
/// union is checked to be all of V, which makes them dominating.
pub fn hyperplane_dominating_set(g: &IntersectionGraph, w: usize) -> Result<Certificate, ConstructionError> {
    let n = g.n();
    if n < 3 {
        return Err(ConstructionError::TooSmall { n, min: 3 });
    }
    let base = g.subspace(w);
    if base.dim() != n - 2 {
        return Err(ConstructionError::BadDimension {
            vertex: w,
            got: base.dim(),
            expected: n - 2,
        });
    }
    let f = g.field();
    let members: Vec<usize> = g
        .class(n - 1)
        .filter(|&h| linalg::is_subspace_of(f, base, g.subspace(h)).unwrap())
        .collect();
    check_size("hyperplanes through W", members.len(), BigCount::from(q(g) + 1))?;
    for x in all_vectors(f, n) {
        if !members
            .iter()
            .any(|&h| linalg::contains(f, g.subspace(h), &x).unwrap())
        {
            return Err(ConstructionError::NotCovering(x.0.iter().map(|c| c.0).collect()));
        }
    }
    verified(Certificate::DominatingSet(members), g)
}

/// All one-dimensional vertices; pairwise they meet only in zero.
pub fn lines_independent_set(g: &IntersectionGraph) -> Result<Certificate, ConstructionError> {
    let members: Vec<usize> = g.class(1).collect();
    let qq = q(g);
    let expected = (BigCount::from(qq).pow(g.n() as u32) - 1u32) / BigCount::from(qq - 1);
    check_size("lines", members.len(), expected)?;
    verified(Certificate::IndependentSet(members), g)
}

/// Vertex used as the fixed line: the first one-dimensional vertex.
pub fn default_line(g: &IntersectionGraph) -> usize {
    g.class(1).start
}

/// Vertex used as the fixed (n-2)-dimensional subspace.
pub fn default_codim2(g: &IntersectionGraph) -> Option<usize> {
    let n = g.n();
    (n >= 3).then(|| g.class(n - 2).start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::graph::{build_graph, BuildOptions};

    fn build(n: usize, q: u32) -> IntersectionGraph {
        build_graph(&FieldSpec::of_order(q).unwrap(), n, &BuildOptions::default()).unwrap()
    }

    #[test]
    fn odd_constructions() {
        let g = build(3, 2);
        assert_eq!(half_dim_clique(&g).unwrap().value(), 7);
        let mc = matching_coloring_odd(&g).unwrap();
        assert_eq!(mc.color_count, 7);
        assert_eq!(mc.matchings.len(), 1);
        assert_eq!(mc.matchings[0].1.value(), 7);

        let g = build(3, 3);
        assert_eq!(half_dim_clique(&g).unwrap().value(), 13);
        assert_eq!(matching_coloring_odd(&g).unwrap().color_count, 13);
    }

    #[test]
    fn parity_errors() {
        let g = build(4, 2);
        assert!(matches!(
            half_dim_clique(&g),
            Err(ConstructionError::Parity { .. })
        ));
        assert!(matches!(
            matching_coloring_odd(&g),
            Err(ConstructionError::Parity { .. })
        ));
        let g = build(3, 2);
        assert!(matches!(
            even_clique_lower(&g, 0),
            Err(ConstructionError::Parity { .. })
        ));
        assert!(matches!(
            even_coloring_upper(&g),
            Err(ConstructionError::Parity { .. })
        ));
    }

    #[test]
    fn even_constructions_at_4_2() {
        let g = build(4, 2);
        let line = default_line(&g);
        assert_eq!(even_clique_lower(&g, line).unwrap().value(), 22);
        for l in g.class(1) {
            assert_eq!(even_clique_lower(&g, l).unwrap().value(), 22);
        }
        let plane = g.class(2).start;
        assert!(matches!(
            even_clique_lower(&g, plane),
            Err(ConstructionError::BadDimension { .. })
        ));
        let ec = even_coloring_upper(&g).unwrap();
        assert_eq!(ec.outer_colors, 15);
        assert!(ec.middle.colors <= 18);
        assert_eq!(ec.middle.max_degree, 18);
        assert!(ec.coloring.color_count <= 33);
        assert!(ec.middle.brooks_failure.is_none());
    }

    #[test]
    fn dominating_and_independent() {
        for (n, q, size) in [(3, 2, 3), (4, 2, 3), (3, 3, 4)] {
            let g = build(n, q);
            let w = default_codim2(&g).unwrap();
            assert_eq!(hyperplane_dominating_set(&g, w).unwrap().value(), size);
        }
        let g = build(3, 2);
        assert!(matches!(
            hyperplane_dominating_set(&g, g.class(2).start),
            Err(ConstructionError::BadDimension { .. })
        ));
        assert!(default_codim2(&build(2, 2)).is_none());

        assert_eq!(lines_independent_set(&build(3, 2)).unwrap().value(), 7);
        assert_eq!(lines_independent_set(&build(4, 2)).unwrap().value(), 15);
        let g = build(2, 3);
        let s = lines_independent_set(&g).unwrap();
        assert_eq!(s.value(), 4);
        assert_eq!(s.value(), g.order());
    }
}
