//! Approximate densest subgraphs of massive graphs by multi-pass peeling.
//!
//! The algorithms read the graph only through sequential passes over an
//! [`EdgeStream`] and keep O(n) state. Modules:
//!
//! - [`graph_io`]: edge-list parsing and rescannable streams
//! - [`peel`]: undirected peeling, size-floored peeling, d-cores
//! - [`directed`]: directed peeling for a fixed side ratio and the ratio sweep
//! - [`sketch`]: Count-Sketch degree estimates and the sketched peeling loop
//! - [`exact`]: brute-force and max-flow optima used as ground truth
//! - [`mr`]: a sharded map/reduce-style executor of the undirected loop
//! - [`fixtures`]: lower-bound constructions and seeded random graphs
//! - [`report`]: CSV traces and JSON results

pub mod adjacency;
mod arith;
pub mod bounds;
pub mod directed;
pub mod eps;
pub mod exact;
pub mod error;
pub mod fixtures;
pub mod graph_io;
pub mod mr;
pub mod peel;
pub mod report;
pub mod sketch;

pub use adjacency::Adjacency;
pub use eps::Epsilon;
pub use error::{Error, Result};
pub use graph_io::{open_edge_stream, EdgeRecord, EdgeStream, NodeId, StreamOptions};
pub use peel::{DenseResult, PassTrace};
