//! Multiparty equality in the local broadcast model.
//!
//! Every vertex of a graph holds a `k`-bit word and the vertices must decide
//! whether all words agree; a broadcast reaches every neighbor and its bits
//! are counted once. The crate provides
//!
//! - [`graph`]: graphs, connectivity, ear decompositions and generators,
//! - [`covers`]: dominating sets, total vertex covers, weakly connected
//!   dominating sets and the constructions built from them,
//! - [`lp`]: exact rational boundary and ball LP bounds,
//! - [`host`]: faithful host structures, explicit and arithmetic,
//! - [`protocol`]: a one-round protocol simulator with correctness checks.

pub mod caps;
pub mod covers;
pub mod error;
pub mod graph;
pub mod host;
pub mod lp;
pub mod protocol;
pub mod word;

pub use caps::Caps;
pub use covers::{CoverCertificate, CoverKind};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use lp::{LpSolution, Rational};
pub use word::BitString;
