use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::ingest::EdgePair;
use crate::metrics::DegreeDistribution;

/// The graph's distinct oriented pairs as labels, in first-seen order.
/// Re-ingesting them reproduces node ids, roles and every metric.
pub fn graph_edge_pairs(g: &Graph) -> Vec<EdgePair> {
    let labels = g.labels();
    g.oriented_pairs()
        .iter()
        .map(|(u, v)| EdgePair::new(labels[u.index()].clone(), labels[v.index()].clone()))
        .collect()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// `id,label,role,degree`, one row per node in id order.
pub fn write_node_table<W: Write>(g: &Graph, out: W) -> Result<(), csv::Error> {
    let mut w = csv_writer(out);
    w.write_record(["id", "label", "role", "degree"])?;
    let degrees = g.degrees();
    for v in g.nodes() {
        let i = v.index();
        w.write_record([
            v.to_string(),
            g.labels()[i].clone(),
            g.roles()[i].to_string(),
            degrees[i].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Binning {
    #[default]
    Raw,
    Log2,
}

/// Two-column plot data: `degree,count` ascending, or `bin_start,count` for
/// geometric bins `[2^i, 2^(i+1))`.
pub fn write_degree_distribution<W: Write>(
    dist: &DegreeDistribution,
    binning: Binning,
    out: W,
) -> Result<(), csv::Error> {
    let mut w = csv_writer(out);
    let rows: Vec<(usize, usize)> = match binning {
        Binning::Raw => {
            w.write_record(["degree", "count"])?;
            dist.histogram.iter().map(|(&d, &c)| (d, c)).collect()
        }
        Binning::Log2 => {
            w.write_record(["bin_start", "count"])?;
            dist.log2_bins()
        }
    };
    for (k, c) in rows {
        w.write_record([k.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
