//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
//!
//! Run with `cargo test -p smallworld --test acceptance`.

mod common;

use std::fs;
use std::io::Cursor;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use smallworld::ingest::{ingest, ingest_path, write_edge_list, ExclusionList, InputFormat};
use smallworld::metrics::{
    apsp_stats, average_clustering, compute_report, density, fit_power_law, local_clustering, triangle_count,
    ClusteringPolicy, DensityMode, PathScope, ReportOptions, XMin,
};
use smallworld::null_models::{gen_ba, gen_er, gen_ws, robustness_probe, small_world_index, RobustnessStrategy};
use smallworld::report::{compare, to_json, ReportDocument};
use smallworld::{Graph, GraphBuilder, NodeId, NodeRole};

const BIN: &str = env!("CARGO_BIN_EXE_smallworld");

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took <= budget, format!("took {took:.2?}, budget {budget:?}"))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(BIN).args(args).output().map_err(|e| e.to_string())?;
    check(
        out.status.success(),
        format!(
            "`smallworld {}` failed: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        ),
    )
}

/// Forest on `n` nodes with exactly `m` edges and no isolated node: one path
/// plus `n - m - 1` single edges.
fn forest(n: usize, m: usize) -> Graph {
    let singles = n - m - 1;
    let mut edges: Vec<(usize, usize)> = (0..singles).map(|i| (2 * i, 2 * i + 1)).collect();
    edges.extend((2 * singles..n - 1).map(|i| (i, i + 1)));
    assert_eq!(edges.len(), m);
    Graph::from_edges(n, &edges).unwrap()
}

fn c1_density() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    let mut docs = Vec::new();
    for (n, m, want, shown) in [(182, 157, 0.00953, "0.010"), (1025, 913, 0.00174, "0.002")] {
        let g = forest(n, m);
        let d = density(&g, DensityMode::Unipartite).map_err(|e| e.to_string())?;
        check((d - want).abs() <= 1e-5, format!("density({n},{m}) = {d}"))?;

        // same value via the CLI on an exported edge list
        let edges = dir.path().join(format!("g{n}.csv"));
        let json = dir.path().join(format!("g{n}.json"));
        let pairs = smallworld::report::graph_edge_pairs(&g);
        write_edge_list(fs::File::create(&edges).unwrap(), &pairs).map_err(|e| e.to_string())?;
        run_cli(&["stats", "-i", edges.to_str().unwrap(), "-o", json.to_str().unwrap()])?;
        let doc = ReportDocument::read(&json).map_err(|e| e.to_string())?;
        check(
            (doc.metrics.n, doc.metrics.m) == (n, m),
            format!("cli n={} m={}", doc.metrics.n, doc.metrics.m),
        )?;
        check(doc.metrics.density == d, format!("cli density {}", doc.metrics.density))?;
        docs.push(doc);
        detail.push(format!("{d:.5}"));
        check(format!("{d:.3}") == shown, format!("display {d:.3} != {shown}"))?;
    }
    let table = compare(&docs[0], &docs[1]).render_table();
    let row = table.lines().find(|l| l.starts_with("density")).unwrap_or_default();
    check(
        row.split_whitespace().collect::<Vec<_>>() == ["density", "0.010", "0.002"],
        format!("table row {row:?}"),
    )?;
    Ok(format!("densities {} shown 0.010 / 0.002", detail.join(" / ")))
}

fn c2_comparison_golden() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let f = fixtures();
    let mut reports = Vec::new();
    for side in ["left", "right"] {
        let input = f.join(format!("{side}_edges.csv"));
        let out = dir.path().join(format!("{side}.json"));
        run_cli(&[
            "stats",
            "-i",
            input.to_str().unwrap(),
            "--name",
            side,
            "-o",
            out.to_str().unwrap(),
        ])?;
        reports.push(out);
    }
    let cmp_json = dir.path().join("cmp.json");
    let out = Command::new(BIN)
        .args(["compare"])
        .args(&reports)
        .args(["-o", cmp_json.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), "compare failed")?;
    let table = String::from_utf8(out.stdout).unwrap();
    let json = fs::read_to_string(&cmp_json).unwrap();
    let golden_json = fs::read_to_string(f.join("compare_golden.json")).map_err(|e| e.to_string())?;
    let golden_table = fs::read_to_string(f.join("compare_golden.txt")).map_err(|e| e.to_string())?;
    check(json == golden_json, "comparison JSON differs from golden")?;
    check(table == golden_table, "comparison table differs from golden")?;
    let cmp: smallworld::report::ComparisonReport = serde_json::from_str(&json).unwrap();
    let want = [
        "left.denser",
        "left.smaller_diameter",
        "left.shorter_apl",
        "left.more_clustered",
    ];
    check(cmp.narrative_flags == want, format!("flags {:?}", cmp.narrative_flags))?;
    Ok(format!("flags {}", want.join(", ")))
}

fn c3_oracles() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..100u64 {
        let n = rng.gen_range(1..=30);
        let p = rng.gen_range(0.02..0.6);
        let edges = random_edges(n, p, 1000 + case);
        let g = Graph::from_edges(n, &edges).unwrap();
        let a = adjacency_matrix(n, &edges);
        let (diam, sum, pairs) = path_oracle(&a);
        match apsp_stats(&g, PathScope::WholeGraph) {
            Ok(s) => {
                check(
                    s.diameter as u64 == diam,
                    format!("case {case}: diameter {} vs {diam}", s.diameter),
                )?;
                check(s.reachable_pairs == pairs, format!("case {case}: pairs"))?;
                let apl = sum as f64 / pairs as f64;
                check(
                    s.average_path_length == apl,
                    format!("case {case}: apl {} vs {apl}", s.average_path_length),
                )?;
            }
            Err(_) => check(pairs == 0, format!("case {case}: unexpected error"))?,
        }
        check(
            triangle_count(&g) == triangles_by_triples(&a),
            format!("case {case}: triangle count"),
        )?;
        for v in 0..n {
            let c = local_clustering(&g, NodeId(v as u32)).unwrap();
            let o = local_clustering_by_pairs(&a, v);
            check((c - o).abs() <= 1e-9, format!("case {case} node {v}: {c} vs {o}"))?;
        }
    }
    within_budget(start, Duration::from_secs(10))?;
    Ok(format!("100 graphs match, {:.2?}", start.elapsed()))
}

fn c4_er_baseline() -> Outcome {
    let start = Instant::now();
    let (mut acc, mut apl) = (0.0, 0.0);
    for seed in 0..20 {
        let g = gen_er(1000, 5000, seed).map_err(|e| e.to_string())?;
        acc += average_clustering(&g, ClusteringPolicy::IncludeLowDegreeAsZero).unwrap();
        apl += apsp_stats(&g, PathScope::LargestComponent).unwrap().average_path_length;
    }
    acc /= 20.0;
    apl /= 20.0;
    let apl_ref = 1000f64.ln() / 10f64.ln();
    check((acc - 0.01).abs() <= 0.25 * 0.01, format!("mean ACC {acc}"))?;
    check((apl - apl_ref).abs() <= 0.15 * apl_ref, format!("mean APL {apl}"))?;
    within_budget(start, Duration::from_secs(30))?;
    Ok(format!("ACC {acc:.5}, APL {apl:.3} vs {apl_ref:.3}"))
}

fn c5_small_world() -> Outcome {
    let start = Instant::now();
    let ws = gen_ws(1000, 10, 0.01, 5).map_err(|e| e.to_string())?;
    let v = small_world_index(&ws, 10, 5).map_err(|e| e.to_string())?;
    let lattice = gen_ws(1000, 10, 0.0, 5).map_err(|e| e.to_string())?;
    let l = small_world_index(&lattice, 10, 5).map_err(|e| e.to_string())?;
    within_budget(start, Duration::from_secs(60))?;
    let detail = format!("p=0.01 sigma {:.3}, p=0 sigma {:.3}", v.sigma, l.sigma);
    check(v.is_small_world, format!("p=0.01 not small-world ({detail})"))?;
    check(
        !l.is_small_world,
        format!("p=0 lattice classified small-world ({detail})"),
    )?;
    Ok(detail)
}

/// Inverse-CDF draw from P(k) = k^-alpha / zeta(alpha), k >= 1, using an
/// explicit cumulative table; the residual mass past the table is negligible.
fn sample_discrete_power_law(alpha: f64, count: usize, seed: u64) -> Vec<u64> {
    const K: usize = 2_000_000;
    let mut cdf = Vec::with_capacity(K);
    let mut acc = 0.0;
    for k in 1..=K {
        acc += (k as f64).powf(-alpha);
        cdf.push(acc);
    }
    // tail beyond K by the integral bound, midpoint-corrected
    let total = acc + ((K as f64) + 0.5).powf(1.0 - alpha) / (alpha - 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u = rng.gen::<f64>() * total;
            (cdf.partition_point(|&c| c < u) + 1).min(K) as u64
        })
        .collect()
}

fn c6_power_law() -> Outcome {
    let start = Instant::now();
    let samples = sample_discrete_power_law(2.5, 10_000, 13);
    let fit = fit_power_law(&samples, XMin::Fixed(1)).map_err(|e| e.to_string())?;
    check((fit.alpha - 2.5).abs() <= 0.1, format!("sample alpha {}", fit.alpha))?;
    let ba = gen_ba(10_000, 2, 6).map_err(|e| e.to_string())?;
    let ba_fit = fit_power_law(&degrees_u64(&ba), XMin::Auto).map_err(|e| e.to_string())?;
    check(
        (2.5..=3.5).contains(&ba_fit.alpha),
        format!("BA alpha {}", ba_fit.alpha),
    )?;
    within_budget(start, Duration::from_secs(20))?;
    Ok(format!(
        "sample alpha {:.4}, BA alpha {:.4} (xmin {})",
        fit.alpha, ba_fit.alpha, ba_fit.xmin
    ))
}

fn c7_hub_dependence() -> Outcome {
    let start = Instant::now();
    let mut wins = 0;
    for rep in 0..20u64 {
        let g = gen_ba(2000, 2, 700 + rep).map_err(|e| e.to_string())?;
        let hub = robustness_probe(&g, RobustnessStrategy::Hub, 0.01, 1, rep).map_err(|e| e.to_string())?;
        let random = robustness_probe(&g, RobustnessStrategy::Random, 0.01, 20, rep).map_err(|e| e.to_string())?;
        let (h, r) = (
            hub.apl_ratio_mean.unwrap_or(f64::NAN),
            random.apl_ratio_mean.unwrap_or(f64::NAN),
        );
        if h > r {
            wins += 1;
        }
    }
    within_budget(start, Duration::from_secs(120))?;
    check(wins >= 19, format!("hub removal won {wins}/20"))?;
    Ok(format!("hub removal raised APL more in {wins}/20"))
}

fn c8_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let f = fixtures();
    let table = f.join("startup_table.tsv");
    let left = f.join("left_edges.csv");
    let p = |s: &str| d.join(s).to_str().unwrap().to_owned();
    let table = table.to_str().unwrap();
    let left = left.to_str().unwrap();

    let mut commands: Vec<Vec<String>> = Vec::new();
    for kind in [
        vec!["--kind", "er", "--n", "300", "--m", "900"],
        vec!["--kind", "ws", "--n", "300", "--k", "6", "--p", "0.1"],
        vec!["--kind", "ba", "--n", "300", "--m-attach", "2"],
    ] {
        let mut c = vec!["generate"];
        c.extend(kind.iter().copied());
        c.extend(["--seed", "9", "-o", "{out}"]);
        commands.push(c.iter().map(|s| s.to_string()).collect());
    }
    let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    commands.push(owned(&[
        "stats",
        "-i",
        left,
        "--small-world-samples",
        "3",
        "--seed",
        "4",
        "-o",
        "{out}",
    ]));
    commands.push(owned(&["stats", "-i", table, "--format", "table", "-o", "{out}"]));
    commands.push(owned(&["degree-dist", "-i", left, "-o", "{out}"]));
    commands.push(owned(&["degree-dist", "-i", left, "--binning", "log2", "-o", "{out}"]));
    commands.push(owned(&[
        "robustness",
        "-i",
        left,
        "--strategy",
        "random",
        "--trials",
        "5",
        "--seed",
        "2",
        "-o",
        "{out}",
    ]));
    commands.push(owned(&[
        "robustness",
        "-i",
        left,
        "--strategy",
        "hub",
        "--fraction",
        "0.05",
        "-o",
        "{out}",
    ]));
    commands.push(owned(&["export", "-i", table, "--format", "table", "-o", "{out}"]));
    commands.push(owned(&[
        "export",
        "-i",
        table,
        "--format",
        "table",
        "--to",
        "nodetable",
        "-o",
        "{out}",
    ]));

    // compare needs two saved reports
    run_cli(&["stats", "-i", left, "-o", &p("a.json")])?;
    run_cli(&["stats", "-i", table, "--format", "table", "-o", &p("b.json")])?;
    commands.push(owned(&["compare", &p("a.json"), &p("b.json"), "-o", "{out}"]));

    for (i, cmd) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = p(&format!("out{i}_{run}"));
            let args: Vec<String> = cmd.iter().map(|a| a.replace("{out}", &out)).collect();
            let refs: Vec<&str> = args.iter().map(String::as_str).collect();
            run_cli(&refs)?;
            outputs.push(fs::read(&out).map_err(|e| e.to_string())?);
        }
        check(
            outputs[0] == outputs[1],
            format!("`{}` output differs between runs", cmd.join(" ")),
        )?;
        check(!outputs[0].is_empty(), format!("`{}` wrote nothing", cmd.join(" ")))?;
    }
    Ok(format!("{} commands byte-identical on rerun", commands.len()))
}

fn c9_performance() -> Outcome {
    let g = gen_er(10_000, 50_000, 2024).map_err(|e| e.to_string())?;
    let sequential = ReportOptions {
        parallel: false,
        ..ReportOptions::default()
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let single = pool
        .install(|| compute_report(&g, &sequential))
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    check(
        took <= Duration::from_secs(10),
        format!("single worker took {took:.2?}"),
    )?;
    let parallel = compute_report(
        &g,
        &ReportOptions {
            parallel: true,
            ..ReportOptions::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let (a, b) = (
        to_json(&ReportDocument::new("g", single)),
        to_json(&ReportDocument::new("g", parallel)),
    );
    check(a == b, "parallel report differs from single-worker report")?;
    Ok(format!("single worker {took:.2?}, parallel identical"))
}

fn c10_ingest_fidelity() -> Outcome {
    let path = fixtures().join("startup_table.tsv");
    let mut ingested = ingest_path(&path, InputFormat::Table, &ExclusionList::default()).map_err(|e| e.to_string())?;
    let g = GraphBuilder::new()
        .build(ingested.pairs.iter().map(|p| p.as_tuple()))
        .map_err(|e| e.to_string())?;
    ingested.settle_duplicates(g.edge_count());

    let rec = ingested.record_log.expect("table input has a record log");
    check(
        rec.reconciles() && ingested.pair_log.reconciles(),
        "logs do not reconcile",
    )?;
    check(
        (
            rec.input_count,
            rec.dropped_no_investor,
            rec.dropped_duplicate,
            rec.output_count,
        ) == (16, 1, 1, 14),
        format!("record log {rec}"),
    )?;
    let pl = &ingested.pair_log;
    check(
        (
            pl.input_count,
            pl.dropped_self_loop,
            pl.dropped_duplicate,
            pl.output_count,
        ) == (43, 1, 1, 41),
        format!("pair log {pl}"),
    )?;

    let mut exported = Vec::new();
    write_edge_list(&mut exported, &smallworld::report::graph_edge_pairs(&g)).map_err(|e| e.to_string())?;
    let again =
        ingest(Cursor::new(exported), InputFormat::Edgelist, &ExclusionList::default()).map_err(|e| e.to_string())?;
    let h = GraphBuilder::new()
        .build(again.pairs.iter().map(|p| p.as_tuple()))
        .map_err(|e| e.to_string())?;
    check(
        (h.node_count(), h.edge_count()) == (45, 41),
        format!("n={} m={}", h.node_count(), h.edge_count()),
    )?;
    let both: Vec<&str> = h
        .nodes()
        .filter(|&v| h.role(v).unwrap() == NodeRole::Both)
        .map(|v| h.labels()[v.index()].as_str())
        .collect();
    check(both == ["Founder Institute"], format!("Both nodes {both:?}"))?;
    check(
        h.labels() == g.labels() && h.roles() == g.roles(),
        "round trip changed ids or roles",
    )?;
    Ok("n=45 m=41, one Both node, logs reconcile".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 density reproduction", c1_density),
        ("2 comparison golden", c2_comparison_golden),
        ("3 oracle equivalence", c3_oracles),
        ("4 ER analytic baseline", c4_er_baseline),
        ("5 small-world canonical instance", c5_small_world),
        ("6 power-law recovery", c6_power_law),
        ("7 hub dependence", c7_hub_dependence),
        ("8 determinism", c8_determinism),
        ("9 performance budget", c9_performance),
        ("10 ingest fidelity", c10_ingest_fidelity),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("acceptance {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("acceptance {name}: FAIL ({why})");
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
