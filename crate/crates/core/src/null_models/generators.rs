use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;

use super::rng_from_seed;
use crate::error::NullModelError;
use crate::graph::Graph;

/// Maps `k` in `0..n(n-1)/2` to the `k`-th pair `(u, v)`, `u < v`, ordered by `v` then `u`.
fn pair_from_index(k: usize) -> (usize, usize) {
    let mut v = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as usize;
    while v * (v - 1) / 2 > k {
        v -= 1;
    }
    while (v + 1) * v / 2 <= k {
        v += 1;
    }
    (k - v * (v - 1) / 2, v)
}

/// Uniform simple graph with exactly `n` nodes and `m` edges.
pub fn gen_er(n: usize, m: usize, seed: u64) -> Result<Graph, NullModelError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(NullModelError::TooManyEdges { n, m, max });
    }
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(usize, usize)> = index::sample(&mut rng, max, m)
        .into_iter()
        .map(pair_from_index)
        .collect();
    edges.sort_unstable();
    Ok(Graph::from_edges(n, &edges)?)
}

/// Watts-Strogatz: ring lattice with each node joined to its `k` nearest
/// neighbors, then each lattice edge `(u, u+j)` rewired with probability `p`
/// to `(u, w)` for a uniform `w` that is neither `u` nor already adjacent.
pub fn gen_ws(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph, NullModelError> {
    if !k.is_multiple_of(2) || k < 2 || k >= n {
        return Err(NullModelError::Parameter(format!(
            "watts-strogatz needs even k with 2 <= k < n (k={k}, n={n})"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(NullModelError::Parameter(format!(
            "rewiring probability {p} outside [0, 1]"
        )));
    }
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::with_capacity(k); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let mut rng = rng_from_seed(seed);
    for j in 1..=k / 2 {
        for u in 0..n {
            if rng.gen::<f64>() >= p || adj[u].len() >= n - 1 {
                continue;
            }
            let v = (u + j) % n;
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let mut edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
        .collect();
    edges.sort_unstable();
    Ok(Graph::from_edges(n, &edges)?)
}

/// Barabasi-Albert preferential attachment, seeded with a clique on
/// `m_attach + 1` nodes. Each arriving node draws `m_attach` distinct targets
/// with probability proportional to degree (duplicates are redrawn).
pub fn gen_ba(n: usize, m_attach: usize, seed: u64) -> Result<Graph, NullModelError> {
    if m_attach < 1 || m_attach >= n {
        return Err(NullModelError::Parameter(format!(
            "barabasi-albert needs 1 <= m_attach < n (m_attach={m_attach}, n={n})"
        )));
    }
    let core = m_attach + 1;
    let mut edges = Vec::with_capacity(core * m_attach / 2 + (n - core) * m_attach);
    // each node appears once per incident edge end
    let mut ends: Vec<usize> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..core {
        for v in u + 1..core {
            edges.push((u, v));
            ends.push(u);
            ends.push(v);
        }
    }
    let mut rng = rng_from_seed(seed);
    let mut targets = Vec::with_capacity(m_attach);
    for v in core..n {
        targets.clear();
        while targets.len() < m_attach {
            let t = ends[rng.gen_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            ends.push(t);
            ends.push(v);
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}
