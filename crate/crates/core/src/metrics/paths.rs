//! Unweighted shortest paths: single-source BFS and the all-sources sweep
//! behind diameter and average path length.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GraphError, MetricsError};
use crate::graph::{Graph, NodeId};

const UNSEEN: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathScope {
    /// All nodes; unreachable pairs are skipped and reported via `reachable_pairs`.
    #[serde(rename = "whole")]
    WholeGraph,
    #[default]
    #[serde(rename = "lcc")]
    LargestComponent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    pub scope: PathScope,
    pub diameter: u32,
    /// Mean over unordered reachable pairs. Ordered-pair averaging gives the
    /// same value on undirected graphs.
    pub average_path_length: f64,
    pub reachable_pairs: u64,
    /// Eccentricity within the node's component; `None` for nodes outside the scope.
    pub eccentricity: Vec<Option<u32>>,
}

/// Exact hop distances from `source`; `None` marks unreachable nodes.
pub fn sssp_bfs(g: &Graph, source: NodeId) -> Result<Vec<Option<u32>>, GraphError> {
    g.degree(source)?;
    let mut scratch = Bfs::new(g.node_count());
    scratch.run(g, source.index());
    Ok(scratch.dist.iter().map(|&d| (d != UNSEEN).then_some(d)).collect())
}

/// Reusable BFS buffers. `dist` is restored to all-`UNSEEN` after each sweep
/// by walking the queue, so a sweep costs O(component) rather than O(n).
struct Bfs {
    dist: Vec<u32>,
    queue: Vec<u32>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Sweep {
    distance_sum: u64,
    reached: u64,
    eccentricity: u32,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs {
            dist: vec![UNSEEN; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn run(&mut self, g: &Graph, source: usize) -> Sweep {
        self.queue.clear();
        self.queue.push(source as u32);
        self.dist[source] = 0;
        let mut head = 0;
        let mut sweep = Sweep::default();
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            let du = self.dist[u];
            for &w in g.adj(u) {
                let w = w.index();
                if self.dist[w] == UNSEEN {
                    self.dist[w] = du + 1;
                    self.queue.push(w as u32);
                    sweep.distance_sum += u64::from(du + 1);
                    sweep.reached += 1;
                    sweep.eccentricity = du + 1;
                }
            }
        }
        sweep
    }

    fn reset(&mut self) {
        for &u in &self.queue {
            self.dist[u as usize] = UNSEEN;
        }
    }
}

/// Diameter and average path length by BFS from every in-scope node.
pub fn apsp_stats(g: &Graph, scope: PathScope) -> Result<PathStats, MetricsError> {
    apsp_stats_with(g, scope, false)
}

/// [`apsp_stats`] with optional fan-out of sources across the rayon pool.
///
/// Per-source results are integers and are combined in source order, so the
/// parallel and sequential paths produce bit-identical stats.
pub fn apsp_stats_with(g: &Graph, scope: PathScope, parallel: bool) -> Result<PathStats, MetricsError> {
    let n = g.node_count();
    let sources: Vec<usize> = match scope {
        PathScope::WholeGraph => (0..n).collect(),
        PathScope::LargestComponent => {
            let cc = g.connected_components();
            if cc.count() == 0 {
                return Err(MetricsError::NoPairs);
            }
            (0..n).filter(|&i| cc.component_id[i] == 0).collect()
        }
    };

    let sweeps: Vec<(usize, Sweep)> = if parallel {
        sources
            .par_iter()
            .map_init(
                || Bfs::new(n),
                |bfs, &s| {
                    let sweep = bfs.run(g, s);
                    bfs.reset();
                    (s, sweep)
                },
            )
            .collect()
    } else {
        let mut bfs = Bfs::new(n);
        sources
            .iter()
            .map(|&s| {
                let sweep = bfs.run(g, s);
                bfs.reset();
                (s, sweep)
            })
            .collect()
    };

    let mut eccentricity = vec![None; n];
    let (mut ordered_sum, mut ordered_pairs, mut diameter) = (0u64, 0u64, 0u32);
    for (s, sweep) in sweeps {
        ordered_sum += sweep.distance_sum;
        ordered_pairs += sweep.reached;
        diameter = diameter.max(sweep.eccentricity);
        eccentricity[s] = Some(sweep.eccentricity);
    }
    if ordered_pairs == 0 {
        return Err(MetricsError::NoPairs);
    }
    let (sum, pairs) = (ordered_sum / 2, ordered_pairs / 2);
    Ok(PathStats {
        scope,
        diameter,
        average_path_length: sum as f64 / pairs as f64,
        reachable_pairs: pairs,
        eccentricity,
    })
}
