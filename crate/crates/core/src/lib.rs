//! Perfect-matching extension in regular graphs: maximum matchings with
//! Tutte barriers, cyclic and odd-cyclic edge-connectivity, packings of
//! edge-disjoint odd ears, the sharpness constructions, and a harness that
//! tests the extension theorem on generated instances.

pub mod connectivity;
pub mod constructions;
pub mod ears;
pub mod error;
pub mod fixtures;
mod flow;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod matching;

pub use connectivity::{ConnectivityValue, CutCertificate};
pub use constructions::{ConstructionOutput, DeficientBipartiteBase};
pub use ears::{Ear, EarPacking};
pub use error::{Error, Result};
pub use graph::{edge, parse_graph, serialize_graph, Edge, EdgeSet, Extended, Format, Graph, Vertex};
pub use harness::{Budget, HypothesisReport, TheoremVerdict};
pub use matching::{BarrierCertificate, ExtensionResult, Matching};
