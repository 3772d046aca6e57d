//! Intersection graphs of subspaces of a finite vector space.
//!
//! The vertices of G(V) are the proper nontrivial subspaces of V = GF(q)^n;
//! two distinct vertices are adjacent when the subspaces meet in a nonzero
//! vector. This crate enumerates the graph, evaluates the closed-form
//! values of its clique, chromatic, domination and independence numbers,
//! builds the explicit certificates behind those values, and checks both
//! against exact solvers.

pub mod bitset;
pub mod certificate;
pub mod constructions;
pub mod counting;
pub mod gf;
pub mod graph;
pub mod linalg;
pub mod par;
pub mod solvers;

pub use certificate::{verify, Certificate, CertificateKind, CertificateRecord};
pub use counting::{gaussian_binomial, predicted_invariants, BigCount, PredictedInvariants};
pub use gf::{build_field, FieldElement, FieldSpec};
pub use graph::{build_graph, BuildOptions, DenseGraph, IntersectionGraph};
pub use linalg::{Subspace, SubspaceId, VectorQ};
pub use solvers::{Budget, SolveResult, Status};
