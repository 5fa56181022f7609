use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while constructing or indexing a [`Graph`](crate::graph::Graph).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on label {0:?}")]
    SelfLoop(String),
    #[error("blank node label")]
    EmptyLabel,
    #[error("node id {index} out of range for graph with {n} nodes")]
    OutOfRange { index: usize, n: usize },
    #[error("graph too large: {0} nodes exceeds the u32 id space")]
    TooManyNodes(usize),
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("missing required column {0:?}")]
    MissingColumn(String),
    #[error("line {line}: expected {expected} fields, found {found}")]
    MalformedRow { line: u64, expected: usize, found: usize },
    #[error("line {line}: empty {column} field")]
    EmptyField { line: u64, column: String },
    #[error("line {line}: invalid UTF-8")]
    Encoding { line: u64 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),
    #[error("no connected node pair in scope")]
    NoPairs,
    #[error("power-law tail needs at least two distinct values >= xmin (found {n_tail} samples)")]
    InsufficientTail { n_tail: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NullModelError {
    #[error("{m} edges requested but a simple graph on {n} nodes holds at most {max}")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("every baseline sample has zero clustering")]
    DegenerateBaseline,
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unsupported report schema_version {found} (expected {expected})")]
    Schema { found: u32, expected: u32 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed report JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Any failure surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    NullModel(#[from] NullModelError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid argument: {0}")]
    Usage(String),
}

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;

impl Error {
    /// 2 for bad input or parameters, 3 for a graph the metrics cannot be computed on.
    pub fn exit_code(&self) -> u8 {
        let degenerate_metrics = |e: &MetricsError| !matches!(e, MetricsError::Graph(_));
        match self {
            Error::Metrics(e) if degenerate_metrics(e) => EXIT_DEGENERATE,
            Error::NullModel(NullModelError::DegenerateBaseline) => EXIT_DEGENERATE,
            Error::NullModel(NullModelError::Metrics(e)) if degenerate_metrics(e) => EXIT_DEGENERATE,
            _ => EXIT_INPUT,
        }
    }
}
