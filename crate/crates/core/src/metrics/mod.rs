//! Network properties of a [`Graph`]: degree distribution, density, diameter,
//! average path length and average clustering, plus the supporting component,
//! triangle and power-law quantities.

mod clustering;
mod paths;
mod powerlaw;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use clustering::{
    average_clustering, local_clustering, local_clustering_all, triangle_count, triangles_per_node, ClusteringPolicy,
};
pub use paths::{apsp_stats, apsp_stats_with, sssp_bfs, PathScope, PathStats};
pub use powerlaw::{
    continuity_corrected_alpha, fit_power_law, fit_power_law_with, hurwitz_zeta, ln_hurwitz_zeta, PowerLawEstimator,
    PowerLawFit, XMin,
};

use crate::error::MetricsError;
use crate::graph::Graph;
use crate::null_models::SmallWorldVerdict;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    pub n: usize,
    /// degree -> node count; zero counts are absent.
    pub histogram: BTreeMap<usize, usize>,
    /// degree -> fraction of nodes.
    pub pdf: BTreeMap<usize, f64>,
}

impl DegreeDistribution {
    /// Counts in geometric bins `[2^i, 2^(i+1))` as `(bin_start, count)`,
    /// from the first to the last non-empty bin. Degree 0 gets its own bin.
    pub fn log2_bins(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        if let Some(&c) = self.histogram.get(&0) {
            out.push((0, c));
        }
        let mut bins: BTreeMap<u32, usize> = BTreeMap::new();
        for (&d, &c) in self.histogram.range(1..) {
            *bins.entry(d.ilog2()).or_default() += c;
        }
        if let (Some(&lo), Some(&hi)) = (bins.keys().next(), bins.keys().next_back()) {
            for i in lo..=hi {
                out.push((1usize << i, bins.get(&i).copied().unwrap_or(0)));
            }
        }
        out
    }
}

pub fn degree_distribution(g: &Graph) -> Result<DegreeDistribution, MetricsError> {
    let n = g.node_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let mut histogram = BTreeMap::new();
    for d in g.degrees() {
        *histogram.entry(d).or_insert(0) += 1;
    }
    let pdf = histogram.iter().map(|(&d, &c)| (d, c as f64 / n as f64)).collect();
    Ok(DegreeDistribution { n, histogram, pdf })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMode {
    /// `2m / (n(n-1))`.
    #[default]
    Unipartite,
    /// `m / (|U||V|)`; `Both` nodes count on both sides.
    Bipartite,
}

pub fn density(g: &Graph, mode: DensityMode) -> Result<f64, MetricsError> {
    let (n, m) = (g.node_count(), g.edge_count());
    match mode {
        DensityMode::Unipartite => {
            if n < 2 {
                return Err(MetricsError::DegenerateGraph("density needs at least 2 nodes".into()));
            }
            Ok(2.0 * m as f64 / (n as f64 * (n as f64 - 1.0)))
        }
        DensityMode::Bipartite => {
            let u = g.roles().iter().filter(|r| r.on_startup_side()).count();
            let v = g.roles().iter().filter(|r| r.on_investor_side()).count();
            if u == 0 || v == 0 {
                return Err(MetricsError::DegenerateGraph(
                    "bipartite density needs both startup and investor nodes".into(),
                ));
            }
            Ok(m as f64 / (u as f64 * v as f64))
        }
    }
}

/// Everything that changes a computed report; recorded in the report itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReportOptions {
    pub scope: PathScope,
    pub clustering_policy: ClusteringPolicy,
    pub density_mode: DensityMode,
    pub xmin: XMin,
    pub estimator: PowerLawEstimator,
    /// Fan BFS sources out over the rayon pool. Does not affect results.
    #[serde(skip)]
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub options: ReportOptions,
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub degree_distribution: DegreeDistribution,
    pub path_stats: PathStats,
    pub average_clustering: f64,
    pub triangle_count: u64,
    pub component_sizes: Vec<usize>,
    /// `None` when the degree tail is too small or uniform to fit.
    pub power_law: Option<PowerLawFit>,
    pub strictly_bipartite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub small_world: Option<SmallWorldVerdict>,
}

impl MetricsReport {
    pub fn clustering_policy(&self) -> ClusteringPolicy {
        self.options.clustering_policy
    }
}

pub fn compute_report(g: &Graph, options: &ReportOptions) -> Result<MetricsReport, MetricsError> {
    if g.node_count() < 2 {
        return Err(MetricsError::DegenerateGraph("report needs at least 2 nodes".into()));
    }
    let degree_distribution = degree_distribution(g)?;
    let density = density(g, options.density_mode)?;
    let path_stats = apsp_stats_with(g, options.scope, options.parallel)?;
    let average_clustering = average_clustering(g, options.clustering_policy)?;
    let degrees: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    let power_law = match fit_power_law_with(&degrees, options.xmin, options.estimator) {
        Ok(fit) => Some(fit),
        Err(MetricsError::InsufficientTail { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(MetricsReport {
        options: *options,
        n: g.node_count(),
        m: g.edge_count(),
        density,
        degree_distribution,
        path_stats,
        average_clustering,
        triangle_count: triangle_count(g),
        component_sizes: g.connected_components().component_sizes,
        power_law,
        strictly_bipartite: g.is_strictly_bipartite(),
        small_world: None,
    })
}
