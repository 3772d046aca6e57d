//! Graph export (DOT, JSON, binary cache) and cache import.
//!
//! Binary cache layout, all integers little-endian:
//!
//! ```text
//! "QIGR"                       magic
//! u16                          format version
//! u32 n, u32 p, u32 e, u32 V   ambient dimension, field, vertex count
//! V x { u8 dim, dim*n bytes }  RREF rows, one base-q digit per byte
//! V x ceil(V/8) bytes          adjacency rows; bit i (LSB first) of row v
//!                              is set iff v ~ i
//! u32                          CRC32 of every preceding byte
//! ```

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use super::{DenseGraph, IntersectionGraph};
use crate::bitset::BitSet;
use crate::gf::{self, FieldElement, FieldError, FieldSpec};
use crate::linalg::Subspace;

pub const CACHE_MAGIC: &[u8; 4] = b"QIGR";
pub const CACHE_VERSION: u16 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("not a graph cache (bad magic)")]
    BadMagic,
    #[error("cache format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u16, expected: u16 },
    #[error("cache file is truncated")]
    Truncated,
    #[error("cache checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    Checksum { stored: u32, computed: u32 },
    #[error("corrupt cache: {0}")]
    Corrupt(String),
    #[error("cache field mismatch: {0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub fn write_cache(g: &IntersectionGraph) -> Vec<u8> {
    let n = g.n();
    let count = g.order();
    let row_bytes = count.div_ceil(8);
    let mut out = Vec::with_capacity(22 + count * (1 + n * n) + count * row_bytes + 4);
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    for x in [n as u32, g.field().p(), g.field().e(), count as u32] {
        out.extend_from_slice(&x.to_le_bytes());
    }
    for s in g.vertices() {
        out.push(s.dim() as u8);
        for row in s.basis() {
            out.extend(row.iter().map(|c| c.0));
        }
    }
    for v in 0..count {
        let mut row = vec![0u8; row_bytes];
        for i in g.dense().neighbors(v) {
            row[i / 8] |= 1 << (i % 8);
        }
        out.extend_from_slice(&row);
    }
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8], CacheError> {
        let end = self.pos.checked_add(k).ok_or(CacheError::Truncated)?;
        let s = self.buf.get(self.pos..end).ok_or(CacheError::Truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, CacheError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

/// Reads a cache produced by [`write_cache`]. The field is rebuilt from the
/// stored `(p, e)` with the built-in modulus unless `field` is supplied.
pub fn read_cache(bytes: &[u8], field: Option<&FieldSpec>) -> Result<IntersectionGraph, CacheError> {
    if bytes.len() < 4 {
        return Err(CacheError::Truncated);
    }
    if &bytes[..4] != CACHE_MAGIC {
        return Err(CacheError::BadMagic);
    }
    if bytes.len() < 6 {
        return Err(CacheError::Truncated);
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != CACHE_VERSION {
        return Err(CacheError::VersionMismatch {
            found: version,
            expected: CACHE_VERSION,
        });
    }
    if bytes.len() < 10 {
        return Err(CacheError::Truncated);
    }
    let (body, tail) = bytes.split_at(bytes.len() - 4);
    let stored = u32::from_le_bytes(tail.try_into().unwrap());
    let computed = crc32fast::hash(body);

    let mut r = Reader { buf: body, pos: 6 };
    let n = r.u32()? as usize;
    let p = r.u32()?;
    let e = r.u32()?;
    let count = r.u32()? as usize;
    if stored != computed {
        return Err(CacheError::Checksum { stored, computed });
    }

    let field = match field {
        Some(f) if f.p() == p && f.e() == e => f.clone(),
        Some(f) => {
            return Err(CacheError::Corrupt(format!(
                "cache holds GF({p}^{e}) but GF({}^{}) was supplied",
                f.p(),
                f.e()
            )))
        }
        None => gf::build_field(p, e, None, u32::MAX)?,
    };

    let mut vertices = Vec::with_capacity(count.min(1 << 20));
    for v in 0..count {
        let dim = r.take(1)?[0] as usize;
        if dim == 0 || dim >= n {
            return Err(CacheError::Corrupt(format!("vertex {v} has dimension {dim}")));
        }
        let raw = r.take(dim * n)?;
        if let Some(&c) = raw.iter().find(|&&c| c as u32 >= field.q()) {
            return Err(CacheError::Corrupt(format!(
                "vertex {v} has entry {c} outside GF({})",
                field.q()
            )));
        }
        let basis = raw
            .chunks(n)
            .map(|row| row.iter().map(|&c| FieldElement(c)).collect())
            .collect();
        let s =
            Subspace::from_rref(n, basis).map_err(|err| CacheError::Corrupt(format!("vertex {v}: {err}")))?;
        if vertices.last().is_some_and(|prev: &Subspace| prev.dim() > dim) {
            return Err(CacheError::Corrupt("vertices not ordered by dimension".into()));
        }
        vertices.push(s);
    }

    let row_bytes = count.div_ceil(8);
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let raw = r.take(row_bytes)?;
        let mut row = BitSet::new(count);
        for i in 0..count {
            if raw[i / 8] >> (i % 8) & 1 == 1 {
                row.insert(i);
            }
        }
        rows.push(row);
    }
    if r.pos != body.len() {
        return Err(CacheError::Corrupt("trailing bytes before checksum".into()));
    }
    let graph = DenseGraph::from_rows(rows);
    if !graph.is_simple() {
        return Err(CacheError::Corrupt(
            "adjacency is not symmetric and irreflexive".into(),
        ));
    }
    Ok(IntersectionGraph::from_parts(n, field, vertices, graph))
}

fn rref_rows(s: &Subspace) -> Vec<Vec<u8>> {
    s.basis()
        .iter()
        .map(|r| r.iter().map(|c| c.0).collect())
        .collect()
}

pub fn to_dot(g: &IntersectionGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"G(GF({})^{})\" {{", g.q(), g.n());
    for v in 0..g.order() {
        let rows: Vec<String> = rref_rows(g.subspace(v))
            .iter()
            .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(out, "  {v} [label=\"{}\\n{}\"];", g.label(v), rows.join("\\n"));
    }
    for (u, v) in g.dense().edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonVertex {
    id: usize,
    label: String,
    dim: usize,
    rref: Vec<Vec<u8>>,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    n: usize,
    p: u32,
    e: u32,
    q: u32,
    modulus: &'a [u32],
    vertex_count: usize,
    edge_count: usize,
    vertices: Vec<JsonVertex>,
    edges: Vec<(usize, usize)>,
}

pub fn to_json(g: &IntersectionGraph) -> String {
    let doc = JsonGraph {
        n: g.n(),
        p: g.field().p(),
        e: g.field().e(),
        q: g.q(),
        modulus: g.field().modulus(),
        vertex_count: g.order(),
        edge_count: g.dense().edge_count(),
        vertices: (0..g.order())
            .map(|v| JsonVertex {
                id: v,
                label: g.label(v),
                dim: g.subspace(v).dim(),
                rref: rref_rows(g.subspace(v)),
            })
            .collect(),
        edges: g.dense().edges().collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph json is serializable")
}
