use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{largest_component, rng_from_seed};
use crate::error::{MetricsError, NullModelError};
use crate::graph::{Graph, NodeId};
use crate::metrics::{apsp_stats, average_clustering, ClusteringPolicy, PathScope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RobustnessStrategy {
    /// Uniform removal without replacement.
    Random,
    /// Highest degree first, ties by smallest id. Deterministic.
    Hub,
}

/// Largest-component metrics after a removal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemovalOutcome {
    /// `None` when the largest remaining component has no connected pair.
    pub apl: Option<f64>,
    pub clustering: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessResult {
    pub strategy: RobustnessStrategy,
    pub fraction_removed: f64,
    pub removed_per_trial: usize,
    /// Forced to 1 for hub removal.
    pub trials: usize,
    pub seed: u64,
    pub apl_before: f64,
    /// Mean over trials with a defined APL; `None` when no trial has one.
    pub apl_after: Option<f64>,
    pub apl_undefined_trials: usize,
    /// Mean of `apl_after / apl_before` over trials with a defined APL.
    pub apl_ratio_mean: Option<f64>,
    pub clustering_before: f64,
    pub clustering_after: f64,
}

/// Removes `removed` from `g` and measures APL and average clustering on the
/// largest remaining component.
pub fn removal_outcome(g: &Graph, removed: &[NodeId]) -> Result<RemovalOutcome, NullModelError> {
    let mut keep = vec![true; g.node_count()];
    for v in removed {
        g.degree(*v)?;
        keep[v.index()] = false;
    }
    if keep.iter().all(|k| !k) {
        return Err(NullModelError::Parameter("removal leaves an empty graph".into()));
    }
    outcome(&g.induced_subgraph(&keep))
}

fn outcome(g: &Graph) -> Result<RemovalOutcome, NullModelError> {
    let lcc = largest_component(g);
    let apl = match apsp_stats(&lcc, PathScope::WholeGraph) {
        Ok(s) => Some(s.average_path_length),
        Err(MetricsError::NoPairs) => None,
        Err(e) => return Err(e.into()),
    };
    let clustering = average_clustering(&lcc, ClusteringPolicy::IncludeLowDegreeAsZero)?;
    Ok(RemovalOutcome { apl, clustering })
}

fn hub_order(g: &Graph) -> Vec<NodeId> {
    let mut nodes: Vec<NodeId> = g.nodes().collect();
    nodes.sort_by_key(|&v| (std::cmp::Reverse(g.deg(v.index())), v));
    nodes
}

/// Removes `ceil(fraction * n)` nodes per trial and reports how the
/// largest-component APL and clustering respond. Random trial `t` draws with
/// seed `seed + t`.
pub fn robustness_probe(
    g: &Graph,
    strategy: RobustnessStrategy,
    fraction: f64,
    trials: usize,
    seed: u64,
) -> Result<RobustnessResult, NullModelError> {
    let n = g.node_count();
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(NullModelError::Parameter(format!("fraction {fraction} outside (0, 1)")));
    }
    if trials == 0 {
        return Err(NullModelError::Parameter("trials must be at least 1".into()));
    }
    // tolerance keeps exact products like 0.01 * 2000 from rounding up
    let remove = (fraction * n as f64 - 1e-9).ceil().max(0.0) as usize;
    if remove == 0 {
        return Err(NullModelError::Parameter(format!(
            "fraction {fraction} of {n} nodes removes nothing"
        )));
    }
    if n < remove + 2 {
        return Err(NullModelError::Parameter(format!(
            "removing {remove} of {n} nodes leaves fewer than 2"
        )));
    }

    let before = outcome(g)?;
    let apl_before = before.apl.ok_or(MetricsError::NoPairs)?;

    let trials = match strategy {
        RobustnessStrategy::Hub => 1,
        RobustnessStrategy::Random => trials,
    };
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let removed: Vec<NodeId> = match strategy {
                RobustnessStrategy::Hub => hub_order(g).into_iter().take(remove).collect(),
                RobustnessStrategy::Random => {
                    let mut rng = rng_from_seed(seed.wrapping_add(t));
                    index::sample(&mut rng, n, remove)
                        .into_iter()
                        .map(|i| NodeId(i as u32))
                        .collect()
                }
            };
            removal_outcome(g, &removed)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let defined: Vec<f64> = outcomes.iter().filter_map(|o| o.apl).collect();
    let mean = |xs: &[f64]| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
    let ratios: Vec<f64> = defined.iter().map(|a| a / apl_before).collect();
    Ok(RobustnessResult {
        strategy,
        fraction_removed: fraction,
        removed_per_trial: remove,
        trials,
        seed,
        apl_before,
        apl_after: mean(&defined),
        apl_undefined_trials: outcomes.len() - defined.len(),
        apl_ratio_mean: mean(&ratios),
        clustering_before: before.clustering,
        clustering_after: outcomes.iter().map(|o| o.clustering).sum::<f64>() / outcomes.len() as f64,
    })
}
