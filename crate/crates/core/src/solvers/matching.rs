//! Hopcroft-Karp maximum bipartite matching.

use std::collections::VecDeque;

use thiserror::Error;

use crate::certificate::Certificate;
use crate::graph::BipartiteDisjointGraph;

const NIL: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    /// A k-regular bipartite graph with k > 0 always has a perfect matching,
    /// so this indicates a bug upstream.
    #[error("disjointness graph for t = {t} is {degree}-regular but its maximum matching has {size} of {needed} edges")]
    NotPerfect {
        t: usize,
        degree: usize,
        size: usize,
        needed: usize,
    },
}

/// Maximum matching of the bipartite graph with `left_len` left vertices
/// and edges `adj[l]` (right indices below `right_len`). Returns
/// `match_left[l]`.
pub fn maximum_matching(left_len: usize, right_len: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    assert_eq!(adj.len(), left_len);
    let mut match_l = vec![NIL; left_len];
    let mut match_r = vec![NIL; right_len];
    let mut dist = vec![0usize; left_len];

    loop {
        // BFS from free left vertices builds the layered graph
        let mut queue = VecDeque::new();
        for l in 0..left_len {
            if match_l[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = match_r[r];
                if m == NIL {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left_len {
            if match_l[l] == NIL {
                augment(l, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
    match_l.into_iter().map(|r| (r != NIL).then_some(r)).collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &adj[l] {
        let m = match_r[r];
        let ok = m == NIL || (dist[m] == dist[l] + 1 && augment(m, adj, match_l, match_r, dist));
        if ok {
            match_l[l] = r;
            match_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// Perfect matching of a disjointness graph, as parent vertex pairs
/// `(left, right)`. Failure to find one is a consistency error.
pub fn hopcroft_karp(b: &BipartiteDisjointGraph) -> Result<Certificate, MatchingError> {
    let matched = maximum_matching(b.left.len(), b.right.len(), &b.adj);
    let pairs: Vec<(usize, usize)> = matched
        .iter()
        .enumerate()
        .filter_map(|(l, r)| r.map(|r| (b.left[l], b.right[r])))
        .collect();
    let needed = b.left.len().max(b.right.len());
    if b.degree > 0 && pairs.len() != needed {
        return Err(MatchingError::NotPerfect {
            t: b.t,
            degree: b.degree,
            size: pairs.len(),
            needed,
        });
    }
    Ok(Certificate::Matching(pairs))
}
