//! Vectors, row reduction and canonical subspaces over GF(q).
//!
//! A subspace is stored as its reduced row echelon basis, which makes
//! structural equality coincide with equality of subspaces.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ragged matrix: row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("ambient dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("ambient dimension must be at least 1")]
    EmptyAmbient,
    #[error("subspace dimension {k} out of range for ambient dimension {n}")]
    DimOutOfRange { n: usize, k: usize },
    #[error("entry {0} does not belong to the field")]
    BadEntry(u8),
    #[error("basis is not in reduced row echelon form")]
    NotRref,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorQ(pub Vec<FieldElement>);

impl VectorQ {
    pub fn zero(n: usize) -> Self {
        VectorQ(vec![FieldElement::ZERO; n])
    }

    /// Standard basis vector `e_{i+1}` (zero-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = FieldElement::ONE;
        v
    }

    pub fn from_indices(coords: &[u8]) -> Self {
        VectorQ(coords.iter().map(|&c| FieldElement(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// All `q^n` vectors of GF(q)^n in base-q counting order (first coordinate
/// most significant).
pub fn all_vectors(field: &FieldSpec, n: usize) -> impl Iterator<Item = VectorQ> + '_ {
    let q = field.q() as usize;
    let total = q.pow(n as u32);
    (0..total).map(move |mut x| {
        let mut coords = vec![FieldElement::ZERO; n];
        for c in coords.iter_mut().rev() {
            *c = FieldElement((x % q) as u8);
            x /= q;
        }
        VectorQ(coords)
    })
}

fn check_rect(rows: &[Vec<FieldElement>], width: usize) -> Result<(), LinalgError> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(LinalgError::Ragged {
                row: i,
                len: r.len(),
                expected: width,
            });
        }
    }
    Ok(())
}

/// In-place Gauss-Jordan elimination; returns the rank. Rows `0..rank` hold
/// the RREF, the remaining rows are zero.
fn rref_in_place(field: &FieldSpec, m: &mut [Vec<FieldElement>], width: usize) -> usize {
    let mut rank = 0;
    for col in 0..width {
        if rank == m.len() {
            break;
        }
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        if inv != FieldElement::ONE {
            for x in &mut m[rank][col..width] {
                *x = field.mul(*x, inv);
            }
        }
        let (head, tail) = m.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let factor = row[col];
            if factor.is_zero() {
                continue;
            }
            for c in col..width {
                row[c] = field.sub(row[c], field.mul(factor, pivot_row[c]));
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form of `m` (zero rows last) together with its rank.
pub fn rref(
    field: &FieldSpec,
    m: &[Vec<FieldElement>],
) -> Result<(Vec<Vec<FieldElement>>, usize), LinalgError> {
    let width = m.first().map_or(0, Vec::len);
    check_rect(m, width)?;
    for row in m {
        if let Some(c) = row.iter().find(|c| c.0 as u32 >= field.q()) {
            return Err(LinalgError::BadEntry(c.0));
        }
    }
    let mut out = m.to_vec();
    let rank = rref_in_place(field, &mut out, width);
    Ok((out, rank))
}

/// Rank of a stack of equal-length rows. Panics on ragged input.
pub fn rank_of<'a>(field: &FieldSpec, rows: impl IntoIterator<Item = &'a [FieldElement]>) -> usize {
    let mut m: Vec<Vec<FieldElement>> = rows.into_iter().map(<[_]>::to_vec).collect();
    let width = m.first().map_or(0, Vec::len);
    rref_in_place(field, &mut m, width)
}

/// A subspace of GF(q)^n given by its RREF basis (rows ordered by pivot).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<FieldElement>>,
}

/// Stable identity of a subspace: its dimension and its position in the
/// enumeration order of that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubspaceId {
    pub dim: usize,
    pub rank_index: usize,
}

impl fmt::Display for SubspaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}#{}", self.dim, self.rank_index)
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, basis: Vec::new() }
    }

    pub fn whole(n: usize) -> Self {
        Subspace {
            n,
            basis: (0..n).map(|i| VectorQ::unit(n, i).0).collect(),
        }
    }

    /// Wraps rows that are already in RREF without nonzero padding. Used by
    /// the enumerator and the cache reader; checked in debug builds.
    pub(crate) fn from_rref_unchecked(n: usize, basis: Vec<Vec<FieldElement>>) -> Self {
        let s = Subspace { n, basis };
        debug_assert!(s.is_rref());
        s
    }

    /// Builds a subspace from rows that must already be a valid RREF basis.
    pub fn from_rref(n: usize, basis: Vec<Vec<FieldElement>>) -> Result<Self, LinalgError> {
        check_rect(&basis, n)?;
        let s = Subspace { n, basis };
        if s.is_rref() {
            Ok(s)
        } else {
            Err(LinalgError::NotRref)
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).unwrap())
            .collect()
    }

    /// Structural RREF check: strictly increasing unit pivots with zeros
    /// elsewhere in pivot columns.
    pub fn is_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        for (i, row) in self.basis.iter().enumerate() {
            if row.len() != self.n {
                return false;
            }
            let Some(p) = row.iter().position(|c| !c.is_zero()) else {
                return false;
            };
            if row[p] != FieldElement::ONE || last.is_some_and(|l| p <= l) {
                return false;
            }
            if self
                .basis
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && !other[p].is_zero())
            {
                return false;
            }
            last = Some(p);
        }
        true
    }

    fn check_ambient(&self, n: usize) -> Result<(), LinalgError> {
        if self.n == n {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch(self.n, n))
        }
    }
}

/// Span of a family of vectors of common length `n`. The empty family
/// spans the zero subspace of GF(q)^n.
pub fn span(field: &FieldSpec, n: usize, vectors: &[VectorQ]) -> Result<Subspace, LinalgError> {
    if n == 0 {
        return Err(LinalgError::EmptyAmbient);
    }
    let rows: Vec<Vec<FieldElement>> = vectors.iter().map(|v| v.0.clone()).collect();
    check_rect(&rows, n)?;
    let (mut m, rank) = rref(field, &rows)?;
    m.truncate(rank);
    Ok(Subspace { n, basis: m })
}

/// `dim(u ∩ w)`, via `dim u + dim w - rank[u; w]`.
pub fn intersection_dim(field: &FieldSpec, u: &Subspace, w: &Subspace) -> Result<usize, LinalgError> {
    u.check_ambient(w.n)?;
    Ok(intersection_dim_unchecked(field, u, w))
}

#[inline]
pub(crate) fn intersection_dim_unchecked(field: &FieldSpec, u: &Subspace, w: &Subspace) -> usize {
    let r = rank_of(field, u.basis.iter().chain(&w.basis).map(Vec::as_slice));
    u.dim() + w.dim() - r
}

/// Whether `x` lies in `w`.
pub fn contains(field: &FieldSpec, w: &Subspace, x: &VectorQ) -> Result<bool, LinalgError> {
    w.check_ambient(x.len())?;
    if x.is_zero() {
        return Ok(true);
    }
    // Reduce x against the RREF basis; x is in w iff nothing remains.
    let mut r = x.0.clone();
    for (row, p) in w.basis.iter().zip(w.pivots()) {
        let f = r[p];
        if f.is_zero() {
            continue;
        }
        for c in 0..w.n {
            r[c] = field.sub(r[c], field.mul(f, row[c]));
        }
    }
    Ok(r.iter().all(|c| c.is_zero()))
}

/// Whether `u ⊆ w`.
pub fn is_subspace_of(field: &FieldSpec, u: &Subspace, w: &Subspace) -> Result<bool, LinalgError> {
    u.check_ambient(w.n)?;
    for row in &u.basis {
        if !contains(field, w, &VectorQ(row.clone()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographic successor of a k-subset of `0..n`; false when exhausted.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every `k`-dimensional subspace of GF(q)^n, each exactly once.
///
/// Order: pivot-column sets in lexicographic order; within a pivot set, the
/// free entries (row-major) count in base q with the first free entry most
/// significant. Vertex ids in exported graphs depend on this order.
pub fn enumerate_subspaces(field: &FieldSpec, n: usize, k: usize) -> Result<Vec<Subspace>, LinalgError> {
    if k > n {
        return Err(LinalgError::DimOutOfRange { n, k });
    }
    let q = field.q() as u8;
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: (row, col) with col right of the row's pivot and
        // not a pivot column
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                let pivots = &pivots;
                (p + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut basis = vec![vec![FieldElement::ZERO; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r][p] = FieldElement::ONE;
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                basis[r][c] = FieldElement(d);
            }
            out.push(Subspace::from_rref_unchecked(n, basis));

            // increment, last free entry least significant
            let mut i = digits.len();
            let mut carried_out = true;
            while i > 0 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < q {
                    carried_out = false;
                    break;
                }
                digits[i] = 0;
            }
            if carried_out {
                break;
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    Ok(out)
}
