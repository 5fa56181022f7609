mod common;

use std::io::Cursor;

use proptest::prelude::*;

use common::*;
use smallworld::ingest::{
    parse_edge_list, preprocess, records_to_edge_list, write_edge_list, ExclusionList, InputFormat, StartupRecord,
};
use smallworld::metrics::{
    apsp_stats, average_clustering, compute_report, degree_distribution, density, local_clustering_all, triangle_count,
    ClusteringPolicy, DensityMode, PathScope, ReportOptions,
};
use smallworld::null_models::{gen_ba, gen_er, gen_ws};
use smallworld::report::{graph_edge_pairs, to_json, ReportDocument};
use smallworld::{build_graph, Graph, NodeId, NodeRole};

fn edges_strategy(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        // b = a + offset (mod n) with offset in 1..n never equals a
        let pair = (0..n, 1..n.max(2)).prop_map(move |(a, off)| (a, (a + off) % n));
        let count = if n < 2 { 0..1 } else { 0..3 * n };
        (Just(n), prop::collection::vec(pair, count))
    })
}

fn label_pairs() -> impl Strategy<Value = Vec<(String, String)>> {
    let label = prop::sample::select(vec!["A", "B", "C", "D", "E", "X", "Y", "Z", "W"]);
    prop::collection::vec((label.clone(), label), 1..40).prop_map(|v| {
        v.into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.to_owned(), b.to_owned()))
            .collect()
    })
}

fn record() -> impl Strategy<Value = StartupRecord> {
    let name = prop::sample::select(vec!["Alpha", "Beta", "Gamma", "Delta"]);
    let inv = prop::sample::select(vec!["Alpha", "East Ventures", "500 Startups", "Kane Miller"]);
    (name, prop::collection::vec(inv, 0..4)).prop_map(|(n, invs)| StartupRecord {
        startup_name: n.to_owned(),
        category: String::new(),
        description: String::new(),
        location: String::new(),
        founders: vec![],
        investors: invs.into_iter().map(str::to_owned).collect(),
    })
}

/// n, m, triangles, (diameter, APL, pairs), ACC, sorted degrees.
type Scalars = (usize, usize, u64, Option<(u32, f64, u64)>, f64, Vec<usize>);

fn scalars(g: &Graph) -> Scalars {
    let paths = apsp_stats(g, PathScope::WholeGraph)
        .ok()
        .map(|s| (s.diameter, s.average_path_length, s.reachable_pairs));
    let acc = average_clustering(g, ClusteringPolicy::IncludeLowDegreeAsZero).unwrap();
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    (g.node_count(), g.edge_count(), triangle_count(g), paths, acc, degrees)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn graph_is_simple_undirected_and_sorted((n, edges) in edges_strategy(25)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        prop_assert!(g.check_invariants());
        prop_assert_eq!(g.node_count(), n);
        for u in g.nodes() {
            let nb = g.neighbors(u).unwrap();
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&u));
            for &v in nb {
                prop_assert!(g.neighbors(v).unwrap().contains(&u));
            }
        }
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn roles_follow_sides(pairs in label_pairs()) {
        prop_assume!(!pairs.is_empty());
        let g = build_graph(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap();
        prop_assert!(g.check_invariants());
        for v in g.nodes() {
            let label = &g.labels()[v.index()];
            let left = pairs.iter().any(|(a, _)| a == label);
            let right = pairs.iter().any(|(_, b)| b == label);
            let want = match (left, right) {
                (true, true) => NodeRole::Both,
                (true, false) => NodeRole::Startup,
                _ => NodeRole::Investor,
            };
            prop_assert_eq!(g.role(v).unwrap(), want);
        }
        // first-seen id order
        let mut order: Vec<&str> = Vec::new();
        for (a, b) in &pairs {
            for x in [a.as_str(), b.as_str()] {
                if !order.contains(&x) {
                    order.push(x);
                }
            }
        }
        prop_assert_eq!(g.labels().iter().map(String::as_str).collect::<Vec<_>>(), order);
    }

    #[test]
    fn components_match_reachability((n, edges) in edges_strategy(20)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let parts = g.connected_components();
        prop_assert_eq!(parts.component_sizes.iter().sum::<usize>(), n);
        prop_assert!(parts.component_sizes.windows(2).all(|w| w[0] >= w[1]));
        let d = floyd_warshall(&adjacency_matrix(n, &edges));
        for (u, row) in d.iter().enumerate() {
            for (v, dist) in row.iter().enumerate() {
                prop_assert_eq!(parts.component_id[u] == parts.component_id[v], dist.is_some());
            }
        }
    }

    #[test]
    fn path_stats_match_floyd_warshall((n, edges) in edges_strategy(20)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let (diam, sum, pairs) = path_oracle(&adjacency_matrix(n, &edges));
        match apsp_stats(&g, PathScope::WholeGraph) {
            Ok(s) => {
                prop_assert_eq!(u64::from(s.diameter), diam);
                prop_assert_eq!(s.average_path_length, sum as f64 / pairs as f64);
                prop_assert!(s.average_path_length <= f64::from(s.diameter));
                prop_assert!(s.reachable_pairs as usize <= n * (n - 1) / 2);
                let max_ecc = s.eccentricity.iter().flatten().max().copied().unwrap_or(0);
                prop_assert_eq!(max_ecc, s.diameter);
            }
            Err(_) => prop_assert_eq!(pairs, 0),
        }
    }

    #[test]
    fn clustering_sum_rule((n, edges) in edges_strategy(25)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let local = local_clustering_all(&g);
        let weighted: f64 = g
            .degrees()
            .iter()
            .zip(&local)
            .map(|(&d, &c)| c * (d * d.saturating_sub(1) / 2) as f64)
            .sum();
        prop_assert!((weighted - 3.0 * triangle_count(&g) as f64).abs() <= 1e-9);
        prop_assert_eq!(triangle_count(&g), triangles_by_triples(&adjacency_matrix(n, &edges)));
    }

    #[test]
    fn bipartite_graphs_have_no_triangles(pairs in label_pairs()) {
        // prefix the sides so no label is on both
        let pairs: Vec<(String, String)> = pairs.into_iter().map(|(a, b)| (format!("s{a}"), format!("i{b}"))).collect();
        prop_assume!(!pairs.is_empty());
        let g = build_graph(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap();
        prop_assert!(g.is_strictly_bipartite());
        prop_assert_eq!(triangle_count(&g), 0);
        prop_assert_eq!(average_clustering(&g, ClusteringPolicy::IncludeLowDegreeAsZero).unwrap(), 0.0);
    }

    #[test]
    fn edge_order_does_not_matter((n, edges) in edges_strategy(20), seed in any::<u64>()) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let mut shuffled = edges.clone();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
        let h = Graph::from_edges(n, &shuffled).unwrap();
        prop_assert_eq!(scalars(&g), scalars(&h));
    }

    #[test]
    fn relabeling_preserves_paths((n, edges) in edges_strategy(20), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let relabeled: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let h = Graph::from_edges(n, &relabeled).unwrap();
        prop_assert_eq!(scalars(&g), scalars(&h));
    }

    #[test]
    fn degree_distribution_sums((n, edges) in edges_strategy(30)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let dist = degree_distribution(&g).unwrap();
        prop_assert_eq!(dist.histogram.values().sum::<usize>(), n);
        prop_assert!(dist.histogram.values().all(|&c| c > 0));
        prop_assert!((dist.pdf.values().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn preprocess_is_idempotent_and_reconciles(records in prop::collection::vec(record(), 0..12)) {
        let (once, log) = preprocess(records);
        prop_assert!(log.reconciles());
        let (twice, log2) = preprocess(once.clone());
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(log2.dropped(), 0);
        let (pairs, pair_log) = records_to_edge_list(&once);
        prop_assert!(pair_log.reconciles());
        prop_assert!(pairs.iter().all(|p| p.startup_name != p.investor_name));
    }

    #[test]
    fn edge_list_round_trip(records in prop::collection::vec(record(), 0..12)) {
        let (records, _) = preprocess(records);
        let (pairs, _) = records_to_edge_list(&records);
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &pairs).unwrap();
        prop_assert_eq!(parse_edge_list(Cursor::new(buf)).unwrap(), pairs);
    }

    #[test]
    fn exported_graph_reproduces_report(pairs in label_pairs()) {
        prop_assume!(!pairs.is_empty());
        let g = build_graph(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &graph_edge_pairs(&g)).unwrap();
        let ing = smallworld::ingest::ingest(Cursor::new(buf), InputFormat::Edgelist, &ExclusionList::default()).unwrap();
        let h = build_graph(ing.pairs.iter().map(|p| p.as_tuple())).unwrap();
        prop_assert_eq!(h.labels(), g.labels());
        prop_assert_eq!(h.roles(), g.roles());
        let opts = ReportOptions::default();
        match (compute_report(&g, &opts), compute_report(&h, &opts)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn report_json_round_trips((n, edges) in edges_strategy(15)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        if let Ok(m) = compute_report(&g, &ReportOptions::default()) {
            let doc = ReportDocument::new("g", m);
            let text = to_json(&doc);
            let back = ReportDocument::from_json(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(to_json(&back), text);
        }
    }

    #[test]
    fn generators_are_valid_and_deterministic(n in 2usize..60, frac in 0.0f64..1.0, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let max = n * (n - 1) / 2;
        let m = (frac * max as f64) as usize;
        let er = gen_er(n, m, seed).unwrap();
        prop_assert!(er.check_invariants());
        prop_assert_eq!((er.node_count(), er.edge_count()), (n, m));
        prop_assert_eq!(graph_edge_pairs(&er), graph_edge_pairs(&gen_er(n, m, seed).unwrap()));

        let m_attach = 1 + (frac * (n - 1) as f64) as usize % (n - 1);
        let ba = gen_ba(n, m_attach, seed).unwrap();
        prop_assert!(ba.check_invariants());
        let core = m_attach + 1;
        prop_assert_eq!(ba.edge_count(), core * (core - 1) / 2 + (n - core) * m_attach);
        prop_assert_eq!(graph_edge_pairs(&ba), graph_edge_pairs(&gen_ba(n, m_attach, seed).unwrap()));

        if n >= 3 {
            let k = 2 * (1 + (frac * ((n - 1) / 2) as f64) as usize).min((n - 1) / 2);
            let ws = gen_ws(n, k, p, seed).unwrap();
            prop_assert!(ws.check_invariants());
            prop_assert_eq!((ws.node_count(), ws.edge_count()), (n, n * k / 2));
            prop_assert_eq!(graph_edge_pairs(&ws), graph_edge_pairs(&gen_ws(n, k, p, seed).unwrap()));
            let lattice = gen_ws(n, k, 0.0, seed).unwrap();
            prop_assert!(lattice.degrees().iter().all(|&d| d == k));
        }
    }
}

#[test]
fn complete_and_edgeless_density() {
    for n in 2..8 {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let k = Graph::from_edges(n, &edges).unwrap();
        assert_eq!(density(&k, DensityMode::Unipartite).unwrap(), 1.0);
        let empty = Graph::from_edges(n, &[]).unwrap();
        assert_eq!(density(&empty, DensityMode::Unipartite).unwrap(), 0.0);
    }
}

#[test]
fn local_clustering_of_node_ids() {
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let c: Vec<f64> = (0..4)
        .map(|v| smallworld::metrics::local_clustering(&g, NodeId(v)).unwrap())
        .collect();
    assert_eq!(c, vec![1.0, 1.0, 1.0 / 3.0, 0.0]);
}
