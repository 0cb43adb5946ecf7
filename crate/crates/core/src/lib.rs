//! Exact search engine for linear Harbourne constants of line configurations.
//!
//! The crate enumerates candidate singular-point histograms, filters them with
//! necessary conditions, decides combinatorial feasibility by exhaustive
//! search, and looks for explicit realizations over `Q`, `Q(ω)` and small
//! prime fields. Everything is computed with exact arithmetic.

pub mod certificate;
pub mod criteria;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod incidence;
pub mod pipeline;
pub mod realize;
pub mod tspace;

/// Default node budget for the exhaustive searches.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
