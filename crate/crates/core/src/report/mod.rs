//! Stable on-disk shapes: the metrics report JSON, the two-network
//! comparison, and the CSV exports consumed by plotting and layout tools.
//!
//! JSON numbers are written with the shortest representation that parses back
//! to the identical `f64`; rounding for display happens only in the text table.

mod compare;
mod export;

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use compare::{compare, ComparisonReport, ComparisonRow, PropertyValue, Verdicts, PROPERTY_ORDER};
pub use export::{graph_edge_pairs, write_degree_distribution, write_node_table, Binning};

use crate::error::ReportError;
use crate::ingest::PreprocessLog;
use crate::metrics::MetricsReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record_log: Option<PreprocessLog>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_log: Option<PreprocessLog>,
    pub metrics: MetricsReport,
}

impl ReportDocument {
    pub fn new(name: impl Into<String>, metrics: MetricsReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            name: name.into(),
            record_log: None,
            pair_log: None,
            metrics,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        #[derive(Deserialize)]
        struct Version {
            schema_version: u32,
        }
        let Version { schema_version } = serde_json::from_str(text)?;
        if schema_version != SCHEMA_VERSION {
            return Err(ReportError::Schema {
                found: schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, ReportError> {
        let text = fs::read_to_string(path).map_err(|source| ReportError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize, W: Write>(value: &T, mut out: W) -> std::io::Result<()> {
    out.write_all(to_json(value).as_bytes())
}
