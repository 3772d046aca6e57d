//! Command-line front end for `subspace-graph`: configuration, the
//! verification report and the even-n clique census.

pub mod census;
pub mod config;
pub mod report;
