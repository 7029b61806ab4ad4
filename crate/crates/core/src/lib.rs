//! Exact construction of the fan of weighting cones of a leg-weighted
//! stable graph.
//!
//! For a graph with twist `k` every integer weighting `w` (a flow on
//! half-edges balancing `k * kappa(v)` at each vertex) cuts out a cone
//! `c_w` of thicknesses in the non-negative orthant of edge space. Only
//! finitely many distinct cones arise, and together with their faces they
//! form a fan. This crate computes that fan, verifies the fan axioms and the
//! lemmas behind them, and exports the result as JSON or SVG.
//!
//! All arithmetic is exact.

pub mod cones;
pub mod corpus;
pub mod fan;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod svg;
pub mod weighting;
