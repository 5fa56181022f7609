use serde::{Deserialize, Serialize};

use crate::error::{GraphError, MetricsError};
use crate::graph::{Graph, NodeId};

/// Which nodes enter the average clustering coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ClusteringPolicy {
    /// Every node; degree < 2 contributes 0.
    #[default]
    #[serde(rename = "include")]
    IncludeLowDegreeAsZero,
    /// Only nodes of degree >= 2.
    #[serde(rename = "exclude")]
    ExcludeLowDegree,
}

/// Size of the intersection of two ascending slices.
fn intersect_count(a: &[NodeId], b: &[NodeId]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Number of 3-cycles, each counted once at its smallest vertex.
pub fn triangle_count(g: &Graph) -> u64 {
    let mut total = 0;
    for u in 0..g.node_count() {
        let au = g.adj(u);
        let upper = &au[au.partition_point(|w| w.index() <= u)..];
        for (k, &v) in upper.iter().enumerate() {
            let av = g.adj(v.index());
            let above_v = &av[av.partition_point(|&w| w <= v)..];
            total += intersect_count(&upper[k + 1..], above_v);
        }
    }
    total
}

/// Triangles through each node.
pub fn triangles_per_node(g: &Graph) -> Vec<u64> {
    let mut t = vec![0u64; g.node_count()];
    for u in 0..g.node_count() {
        let au = g.adj(u);
        let upper = &au[au.partition_point(|w| w.index() <= u)..];
        for (k, &v) in upper.iter().enumerate() {
            let av = g.adj(v.index());
            let above_v = &av[av.partition_point(|&w| w <= v)..];
            let rest = &upper[k + 1..];
            let (mut i, mut j) = (0, 0);
            while i < rest.len() && j < above_v.len() {
                match rest[i].cmp(&above_v[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        t[u] += 1;
                        t[v.index()] += 1;
                        t[rest[i].index()] += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    t
}

fn coefficient(links: u64, degree: usize) -> f64 {
    if degree < 2 {
        0.0
    } else {
        2.0 * links as f64 / (degree as f64 * (degree as f64 - 1.0))
    }
}

/// Fraction of `v`'s neighbor pairs that are adjacent; 0 when deg(v) < 2.
pub fn local_clustering(g: &Graph, v: NodeId) -> Result<f64, GraphError> {
    let nbrs = g.neighbors(v)?;
    let twice_links: u64 = nbrs.iter().map(|w| intersect_count(nbrs, g.adj(w.index()))).sum();
    Ok(coefficient(twice_links / 2, nbrs.len()))
}

/// Local clustering of every node.
pub fn local_clustering_all(g: &Graph) -> Vec<f64> {
    triangles_per_node(g)
        .into_iter()
        .enumerate()
        .map(|(i, t)| coefficient(t, g.deg(i)))
        .collect()
}

pub fn average_clustering(g: &Graph, policy: ClusteringPolicy) -> Result<f64, MetricsError> {
    if g.node_count() == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let mut local: Vec<f64> = match policy {
        ClusteringPolicy::IncludeLowDegreeAsZero => local_clustering_all(g),
        ClusteringPolicy::ExcludeLowDegree => local_clustering_all(g)
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| g.deg(i) >= 2)
            .map(|(_, c)| c)
            .collect(),
    };
    // summing in value order makes the mean independent of node numbering
    local.sort_unstable_by(f64::total_cmp);
    let (sum, count) = (local.iter().sum::<f64>(), local.len());
    if count == 0 {
        return Err(MetricsError::DegenerateGraph(
            "no node of degree >= 2 to average clustering over".into(),
        ));
    }
    Ok(sum / count as f64)
}
