//! Small-world analysis of two-mode (startup/investor) affiliation networks.
//!
//! The pipeline is ingest → [`graph::Graph`] → [`metrics::compute_report`],
//! with [`null_models`] supplying random baselines, the small-world index and
//! node-removal probes, and [`report`] holding the stable output formats.

pub mod cli;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod null_models;
pub mod report;

pub use error::Error;
pub use graph::{build_graph, ComponentPartition, Graph, GraphBuilder, NodeId, NodeRole};
