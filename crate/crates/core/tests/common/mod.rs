//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smallworld::Graph;

pub fn adjacency_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// All-pairs distances by Floyd–Warshall; `None` marks unreachable pairs.
pub fn floyd_warshall(a: &[Vec<bool>]) -> Vec<Vec<Option<u64>>> {
    let n = a.len();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if a[i][j] {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// (diameter, distance sum, pair count) over unordered connected pairs.
pub fn path_oracle(a: &[Vec<bool>]) -> (u64, u64, u64) {
    let d = floyd_warshall(a);
    let (mut diam, mut sum, mut pairs) = (0, 0, 0);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if let Some(x) = d[i][j] {
                diam = diam.max(x);
                sum += x;
                pairs += 1;
            }
        }
    }
    (diam, sum, pairs)
}

pub fn triangles_by_triples(a: &[Vec<bool>]) -> u64 {
    let n = a.len();
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a[i][j] && a[j][k] && a[i][k] {
                    t += 1;
                }
            }
        }
    }
    t
}

pub fn local_clustering_by_pairs(a: &[Vec<bool>], v: usize) -> f64 {
    let nb: Vec<usize> = (0..a.len()).filter(|&u| a[v][u]).collect();
    if nb.len() < 2 {
        return 0.0;
    }
    let mut closed = 0;
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            if a[x][y] {
                closed += 1;
            }
        }
    }
    closed as f64 / (nb.len() * (nb.len() - 1) / 2) as f64
}

/// G(n, p) edge list drawn independently of the library's generators.
pub fn random_edges(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn degrees_u64(g: &Graph) -> Vec<u64> {
    g.degrees().iter().map(|&d| d as u64).collect()
}
