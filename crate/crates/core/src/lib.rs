//! Exact-arithmetic toolkit for off-diagonal Ramsey multiplicity: graph densities,
//! flag coefficients, certificate verification, switching search and SDP export.

pub mod certificates;
pub mod densities;
pub mod exact;
pub mod flags;
pub mod graph;
mod par;
pub mod sdp_export;
pub mod search;

pub use densities::{Kernel, WeightedGraph};
pub use exact::{Rat, RatMatrix};
pub use flags::Flag;
pub use graph::Graph;
