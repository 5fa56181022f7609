use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gen_er, largest_component};
use crate::error::{MetricsError, NullModelError};
use crate::graph::Graph;
use crate::metrics::{apsp_stats, average_clustering, ClusteringPolicy, PathScope};

/// Clustering and path length of a graph against same-n, same-m random baselines.
///
/// `sigma = (c_observed / c_random) / (l_observed / l_random)`; the raw four
/// values are kept so other thresholds can be applied by readers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallWorldVerdict {
    pub sigma: f64,
    pub c_observed: f64,
    pub c_random: f64,
    pub l_observed: f64,
    pub l_random: f64,
    pub n_baseline_samples: usize,
    pub seed: u64,
    pub is_small_world: bool,
}

/// Average clustering (low degree counted as zero) and APL, both on the largest component.
fn lcc_clustering_and_apl(g: &Graph) -> Result<(f64, f64), MetricsError> {
    let lcc = largest_component(g);
    let apl = apsp_stats(&lcc, PathScope::WholeGraph)?.average_path_length;
    let c = average_clustering(&lcc, ClusteringPolicy::IncludeLowDegreeAsZero)?;
    Ok((c, apl))
}

/// Compares `g` with `n_baseline_samples` Erdős–Rényi graphs of the same
/// node and edge count. Baseline `i` uses seed `seed + i`, so the result does
/// not depend on how the samples are scheduled across threads.
pub fn small_world_index(g: &Graph, n_baseline_samples: usize, seed: u64) -> Result<SmallWorldVerdict, NullModelError> {
    if g.edge_count() == 0 {
        return Err(NullModelError::Parameter(
            "small-world index needs at least one edge".into(),
        ));
    }
    if n_baseline_samples == 0 {
        return Err(NullModelError::Parameter("need at least one baseline sample".into()));
    }
    let (c_observed, l_observed) = lcc_clustering_and_apl(g)?;
    let baselines = (0..n_baseline_samples as u64)
        .into_par_iter()
        .map(|i| {
            let er = gen_er(g.node_count(), g.edge_count(), seed.wrapping_add(i))?;
            Ok(lcc_clustering_and_apl(&er)?)
        })
        .collect::<Result<Vec<(f64, f64)>, NullModelError>>()?;

    let samples = baselines.len() as f64;
    let c_random = baselines.iter().map(|b| b.0).sum::<f64>() / samples;
    let l_random = baselines.iter().map(|b| b.1).sum::<f64>() / samples;
    if c_random == 0.0 {
        return Err(NullModelError::DegenerateBaseline);
    }
    let sigma = (c_observed / c_random) / (l_observed / l_random);
    Ok(SmallWorldVerdict {
        sigma,
        c_observed,
        c_random,
        l_observed,
        l_random,
        n_baseline_samples,
        seed,
        is_small_world: sigma > 1.0 && c_random > 0.0,
    })
}
