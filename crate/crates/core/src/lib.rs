//! Exact equivariant-localization engine for stable-pair invariants of
//! smooth toric surfaces.
//!
//! The crate is organized bottom-up:
//!
//! - [`exact`] — arbitrary-precision rationals, dense univariate polynomials
//!   and rational functions, factored products of linear forms, and truncated
//!   series helpers. Everything downstream is exact; there is no floating
//!   point anywhere.
//! - [`toricgeom`] — fan descriptors for smooth complete toric surfaces,
//!   chart weights, degree tuples and ray-constrained partition enumeration.
//! - [`characters`] — the Laurent-polynomial torus characters attached to a
//!   fixed point (vertex, infinite-vertex and edge blocks) and their
//!   conversion to Chern/Euler factor products.
//! - [`engine`] — assembly of the global partition-function coefficients:
//!   slope specialization, per-vertex local sums with convolution, the
//!   two-slope consistency check and the final limit at the origin.
//! - [`analysis`] — series-level checks: closed forms for the simplest local
//!   sums, Hilbert-scheme generating series, Hankel/rationality tests and
//!   rational reconstruction with a fixed denominator ansatz.

pub mod analysis;
pub mod characters;
pub mod engine;
pub mod exact;
pub mod toricgeom;

pub use characters::{chern_euler, edge_char, g_vertex, infinite_vertex, q_lambda, LaurentChar};
pub use engine::{evir, evir_series, global_coefficient, Coefficient, EngineError};
pub use exact::{FactorProduct, Rat, UPoly, URatFunc};
pub use toricgeom::{
    partitions_in_rays, DegreeTuple, Edge, EdgeId, FixedPoint, Partition, RayBound, ToricSurface,
    Vertex, VertexId,
};
