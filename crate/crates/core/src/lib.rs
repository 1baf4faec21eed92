//! Rainbow-triangle-free graph systems.
//!
//! A system is a tuple of simple graphs `G_1, ..., G_t` on a common vertex
//! set `0..n` (`n <= 64`). A rainbow triangle picks its three sides from three
//! distinct graphs. This crate checks systems for rainbow triangles, builds
//! the matching-based Mantel partition, certifies the known edge-count
//! bounds, and searches small orders for extremal systems.

pub mod certify;
pub mod error;
pub mod graph;
pub mod io;
pub mod matching;
pub mod partition;
pub mod rainbow;
pub mod report;
pub mod search;

pub use error::{CertError, GraphError, ParseError, SearchError, SystemError};
pub use graph::{Edge, Graph, Triangle, VertexSet};
pub use matching::{maximum_matching, MatchingResult};
pub use partition::{mantel_partition, MantelPartition};
pub use rainbow::{find_rainbow_triangle, is_rbt_free, nest_reduce, GraphSystem, RainbowWitness};
pub use report::{CertReport, Claim, Witness};
