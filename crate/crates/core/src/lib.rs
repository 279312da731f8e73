//! Random greedy r-coloring of uniform hypergraphs.
//!
//! The crate contains the coloring procedure and its variants, the conflict
//! structures that explain its failures, numeric evaluation of the analytic
//! bounds, brute-force oracles, and a seeded Monte Carlo workbench that ties
//! them together.

pub mod bounds;
pub mod conflict;
pub mod error;
pub mod format;
pub mod greedy;
pub mod hypergraph;
pub mod oracle;
pub mod rng;
pub mod workbench;

pub use error::{Error, Result};
pub use hypergraph::{BirthTimes, Coloring, Hypergraph, Uniformity, ValidationReport};
