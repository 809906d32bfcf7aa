// Acceptance suite. Every test prints one `criterion N PASS|FAIL` line to
// stderr (uncaptured) and then asserts on the same verdict.
//
// The dataset-backed criteria (12-14) are `#[ignore]`d: they need the
// Glasgow and KAUST AP location files, which are not bundled. Point
// `DSS_GLASGOW_CSV` / `DSS_KAUST_CSV` at them and run
// `cargo test --test acceptance -- --ignored`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use dss::deployment::{generate_ppp, CoordMode, Region};
use dss::engine::{decide, on_trigger, Thresholds};
use dss::experiment::{
    run_geo_analysis, run_sample_network, run_synthetic_sweep, summarize_sweep, Selection,
    SweepGrid, SweepSpec,
};
use dss::graph::build_graph;
use dss::metrics::jain_fairness;
use dss::radio::{estimate_qos, NetworkState};
use dss::rng;
use dss::{NodeSet, RadioConfig, Sbos, SimConfig};
use rand::Rng;

fn verdict(id: u32, title: &str, pass: bool, detail: impl AsRef<str>) {
    let line = format!(
        "criterion {id:>2} {} {title}: {}",
        if pass { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(pass, "{line}");
}

fn radio(s: usize) -> RadioConfig {
    RadioConfig {
        sub_bands: s,
        ..RadioConfig::default()
    }
}

fn random_network(rng: &mut impl Rng, max_nodes: usize, extent: f64) -> NodeSet {
    let n = rng.random_range(1..=max_nodes);
    NodeSet::from_positions(
        (0..n).map(|_| (rng.random_range(0.0..extent), rng.random_range(0.0..extent))),
    )
}

fn random_sbos(rng: &mut impl Rng, n: usize, s: usize) -> Vec<Sbos> {
    (0..n)
        .map(|_| Sbos::from_occupied((0..s).map(|_| rng.random_bool(0.5)).collect()))
        .collect()
}

// ---------------------------------------------------------------------------
// 1. Exhaustive oracle
// ---------------------------------------------------------------------------

/// Straight-line transcription of one decision, working from raw positions.
/// Returns the `±1` states of the deciding node.
fn reference_decision(
    v: usize,
    pos: &[(f64, f64)],
    states: &[Vec<i8>],
    r: &RadioConfig,
    r_n: f64,
    threshold: f64,
) -> Vec<i8> {
    let s = r.sub_bands;
    let gain = |d: f64| d.max(r.d_min).powi(-4);
    let dist = |a: usize, b: usize| (pos[a].0 - pos[b].0).hypot(pos[a].1 - pos[b].1);
    let neighbors: Vec<usize> = (0..pos.len())
        .filter(|&u| u != v && dist(u, v) <= r_n)
        .collect();

    // vote
    let mut votes = vec![0.0; s];
    for &u in &neighbors {
        for k in 0..s {
            votes[k] += gain(dist(u, v)) * states[u][k] as f64;
        }
    }
    // social decision, sgn(0) = -1
    let mut b: Vec<i8> = votes
        .iter()
        .map(|&x| if x > 0.0 { -1 } else { 1 })
        .collect();

    let signal = r.tx_power_w * gain(r.d_ref);
    let n0 = r.noise_density * r.bandwidth_hz;
    let qos = |b: &[i8]| -> f64 {
        let mut total = 0.0;
        for k in 0..s {
            if b[k] == 1 {
                let mut interference = 0.0;
                for &u in &neighbors {
                    if states[u][k] == 1 {
                        interference += r.tx_power_w * gain(dist(u, v));
                    }
                }
                total += r.bandwidth_hz * (1.0 + signal / (n0 + interference)).log2();
            }
        }
        total
    };

    // selfish decision
    while qos(&b) < threshold && b.contains(&-1) {
        let mut pick: Option<usize> = None;
        for k in 0..s {
            if votes[k] > 0.0 && b[k] == -1 && pick.is_none_or(|j| votes[k] < votes[j]) {
                pick = Some(k);
            }
        }
        let k = pick.unwrap_or_else(|| b.iter().position(|&x| x == -1).unwrap());
        b[k] = 1;
        votes[k] = -1.0;
    }
    b
}

#[test]
fn c01_exhaustive_oracle_equivalence() {
    let start = Instant::now();
    let r_n = 150.0;
    let layouts: Vec<Vec<(f64, f64)>> = vec![
        vec![(0.0, 0.0)],
        vec![(0.0, 0.0), (50.0, 0.0)],
        vec![(0.0, 0.0), (500.0, 0.0)],
        vec![(0.0, 0.0), (0.0, 0.0)],
        vec![(0.0, 0.0), (100.0, 0.0), (200.0, 0.0)],
        vec![(0.0, 0.0), (30.0, 0.0), (15.0, 25.0)],
        // hub and three neighbors
        vec![(0.0, 0.0), (40.0, 0.0), (0.0, 60.0), (-80.0, 0.0)],
        vec![(0.0, 0.0), (20.0, 0.0), (140.0, 0.0), (1000.0, 0.0)],
        vec![(0.0, 0.0), (0.5, 0.0), (90.0, 40.0), (-60.0, -100.0)],
    ];
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for s in 1..=3 {
        let r = radio(s);
        let clean = r.bandwidth_hz
            * (1.0 + r.tx_power_w * r.d_ref.powi(-4) / (r.noise_density * r.bandwidth_hz)).log2();
        for pos in &layouts {
            let n = pos.len();
            let nodes = NodeSet::from_positions(pos.iter().copied());
            let graph = build_graph(&nodes, r_n, &r);
            for config in 0u32..(1 << (n * s)) {
                let states: Vec<Vec<i8>> = (0..n)
                    .map(|u| {
                        (0..s)
                            .map(|k| {
                                if config >> (u * s + k) & 1 == 1 {
                                    1
                                } else {
                                    -1
                                }
                            })
                            .collect()
                    })
                    .collect();
                for threshold in [0.0, clean, f64::INFINITY] {
                    for v in 0..n {
                        let sbos = states
                            .iter()
                            .map(|x| Sbos::from_states(x).unwrap())
                            .collect();
                        let mut state = NetworkState::new(&nodes, &graph, &r, sbos);
                        let got = on_trigger(v, &mut state, threshold).states();
                        let want = reference_decision(v, pos, &states, &r, r_n, threshold);
                        checked += 1;
                        if got != want {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "decision matches reference transcription",
        mismatches == 0 && elapsed < Duration::from_secs(60),
        format!("{checked} decisions, {mismatches} mismatches, {elapsed:.2?}"),
    );
}

// ---------------------------------------------------------------------------
// 2. Decision-time guarantee
// ---------------------------------------------------------------------------

#[test]
fn c02_decision_time_guarantee() {
    let mut rng = rng::stream(2, 0);
    let trials = 100_000;
    let mut violations = 0;
    for _ in 0..trials {
        let s = rng.random_range(1..=10);
        let r = radio(s);
        let nodes = random_network(&mut rng, 12, 300.0);
        let graph = build_graph(&nodes, rng.random_range(20.0..300.0), &r);
        let sbos = random_sbos(&mut rng, nodes.len(), s);
        let mut state = NetworkState::new(&nodes, &graph, &r, sbos);
        let v = rng.random_range(0..nodes.len());
        let full = estimate_qos(v, &Sbos::full(s), &state);
        let threshold = match rng.random_range(0..4) {
            0 => 0.0,
            1 => f64::INFINITY,
            _ => rng.random_range(0.0..1.1) * full,
        };
        let b = on_trigger(v, &mut state, threshold);
        if !(b.is_full() || estimate_qos(v, &b, &state) >= threshold) {
            violations += 1;
        }
    }
    verdict(
        2,
        "estimate meets threshold or SBOS is full",
        violations == 0,
        format!("{trials} triggers, {violations} violations"),
    );
}

// ---------------------------------------------------------------------------
// 3. Isolated nodes
// ---------------------------------------------------------------------------

#[test]
fn c03_isolated_node_equivalence() {
    let mut rng = rng::stream(3, 0);
    let r = RadioConfig::default();
    let r_n = 150.0;
    let mut compared = 0;
    let mut unequal = 0;
    let mut not_full = 0;
    for trial in 0..50u64 {
        // lattice spaced beyond R_N, jittered: every node isolated
        let side = rng.random_range(1..6);
        let pts: Vec<(f64, f64)> = (0..side * side)
            .map(|i| {
                let (a, b) = ((i % side) as f64, (i / side) as f64);
                (
                    a * 200.0 + rng.random_range(0.0..40.0),
                    b * 200.0 + rng.random_range(0.0..40.0),
                )
            })
            .collect();
        let nodes = NodeSet::from_positions(pts);
        let sim = SimConfig {
            neighborhood_radius_m: r_n,
            seed: trial,
            ..SimConfig::default()
        };
        let cmp = dss::experiment::compare_schemes(&nodes, &r, &sim, 1.0, false).unwrap();
        assert!((0..nodes.len()).all(|v| cmp.graph.is_isolated(v)));
        for v in 0..nodes.len() {
            compared += 1;
            if cmp.dss.rate_per_node[v] != cmp.greedy.rate_per_node[v] {
                unequal += 1;
            }
        }
        // mixed network: isolated members still end all-(+1)
        let mut mixed = random_network(&mut rng, 30, 400.0)
            .positions()
            .collect::<Vec<_>>();
        mixed.push((5000.0, 5000.0));
        let mixed = NodeSet::from_positions(mixed);
        let cmp = dss::experiment::compare_schemes(&mixed, &r, &sim, 1.0, false).unwrap();
        for v in (0..mixed.len()).filter(|&v| cmp.graph.is_isolated(v)) {
            if !cmp.dss.sbos_per_node[v].is_full() {
                not_full += 1;
            }
        }
    }
    verdict(
        3,
        "isolated nodes get exactly the greedy rate",
        unequal == 0 && not_full == 0,
        format!(
            "{compared} isolated nodes, {unequal} rate mismatches, {not_full} not fully occupied"
        ),
    );
}

// ---------------------------------------------------------------------------
// 4. Scale invariance
// ---------------------------------------------------------------------------

#[test]
fn c04_scale_invariance() {
    let mut rng = rng::stream(4, 0);
    let instances = 2_000;
    let mut differing = 0;
    for _ in 0..instances {
        let s = rng.random_range(1..=10);
        let r = radio(s);
        let nodes = random_network(&mut rng, 15, 300.0);
        let graph = build_graph(&nodes, 200.0, &r);
        let c = 10f64.powf(rng.random_range(-6.0..6.0));
        let scaled = graph.with_scaled_weights(c);
        let sbos = random_sbos(&mut rng, nodes.len(), s);
        let v = rng.random_range(0..nodes.len());
        let threshold = if rng.random_bool(0.5) {
            f64::INFINITY
        } else {
            rng.random_range(0.0..5e9)
        };
        let a = decide(
            v,
            &NetworkState::new(&nodes, &graph, &r, sbos.clone()),
            threshold,
        );
        let b = decide(v, &NetworkState::new(&nodes, &scaled, &r, sbos), threshold);
        if a.social != b.social || a.escalations != b.escalations {
            differing += 1;
        }
    }
    verdict(
        4,
        "decisions invariant to positive weight scaling",
        differing == 0,
        format!("{instances} instances, {differing} differ"),
    );
}

// ---------------------------------------------------------------------------
// 5. Jain index
// ---------------------------------------------------------------------------

#[test]
fn c05_jain_bounds_and_closed_forms() {
    let mut rng = rng::stream(5, 0);
    let mut out_of_bounds = 0;
    for _ in 0..10_000 {
        let n = rng.random_range(1..100);
        let rates: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1e9)).collect();
        let j = jain_fairness(&rates).unwrap();
        if !(j >= 1.0 / n as f64 - 1e-12 && j <= 1.0 + 1e-12) {
            out_of_bounds += 1;
        }
    }
    let equal = (1..50).all(|n| (jain_fairness(&vec![3.5e7; n]).unwrap() - 1.0).abs() < 1e-12);
    let single = (1..50).all(|n| {
        let mut x = vec![0.0; n];
        x[n / 2] = 2e8;
        (jain_fairness(&x).unwrap() - 1.0 / n as f64).abs() < 1e-12
    });
    let j123 = jain_fairness(&[1.0, 2.0, 3.0]).unwrap();
    let six_sevenths = (j123 - 6.0 / 7.0).abs() <= 1e-12;
    verdict(
        5,
        "Jain bounds and closed forms",
        out_of_bounds == 0 && equal && single && six_sevenths,
        format!("bounds violated {out_of_bounds}/10000, equal {equal}, single {single}, J([1,2,3]) = {j123}"),
    );
}

// ---------------------------------------------------------------------------
// 6. CLI determinism
// ---------------------------------------------------------------------------

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_dss"))
        .args(args)
        .output()
        .expect("spawn dss");
    assert!(
        out.status.success(),
        "dss {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

type Files = BTreeMap<String, Vec<u8>>;

fn dir_contents(dir: &Path) -> Files {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn c06_cli_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let config = root.join("config.json");
    fs::write(
        &config,
        r#"{"sim": {"R_N": 150}, "sweep": {"densities": [25, 250], "radii": [50, 150], "replications": 2, "area_km2": 0.25}}"#,
    )
    .unwrap();
    let dataset = root.join("aps.csv");
    let mut rng = rng::stream(6, 0);
    let mut csv = String::from("id,lon,lat\n");
    for i in 0..400 {
        let spread = if i % 3 == 0 { 0.03 } else { 0.006 };
        csv += &format!(
            "{i},{:.6},{:.6}\n",
            -4.25 + rng.random_range(-spread..spread),
            55.86 + rng.random_range(-spread..spread) / 1.8
        );
    }
    fs::write(&dataset, csv).unwrap();

    let cfg = config.to_str().unwrap();
    let data = dataset.to_str().unwrap();
    let mut identical = Vec::new();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("sweep", vec!["sweep", "--config", cfg, "--seed", "42"]),
        (
            "geo",
            vec![
                "geo",
                "--config",
                cfg,
                "--dataset",
                data,
                "--rows",
                "4",
                "--cols",
                "4",
                "--seed",
                "42",
            ],
        ),
        (
            "sample",
            vec![
                "sample",
                "--config",
                cfg,
                "--dataset",
                data,
                "--rows",
                "4",
                "--cols",
                "4",
                "--nearest-count",
                "29",
                "--trace",
                "--seed",
                "42",
            ],
        ),
        ("validate", vec!["validate", "--config", cfg]),
    ];
    for (name, args) in &cases {
        let runs: Vec<(Vec<u8>, Files)> = ["a", "b"]
            .iter()
            .map(|tag| {
                let out: PathBuf = root.join(format!("{name}-{tag}"));
                let mut full = args.clone();
                let out_str = out.to_str().unwrap().to_owned();
                if *name != "validate" {
                    full.extend(["--out", &out_str]);
                }
                let stdout = run_cli(&full);
                let files = if out.exists() {
                    dir_contents(&out)
                } else {
                    BTreeMap::new()
                };
                (stdout, files)
            })
            .collect();
        let same = runs[0] == runs[1] && (*name == "validate" || !runs[0].1.is_empty());
        identical.push((*name, same, runs[0].1.keys().cloned().collect::<Vec<_>>()));
    }
    let pass = identical.iter().all(|(_, same, _)| *same);
    let detail = identical
        .iter()
        .map(|(n, same, files)| {
            format!(
                "{n} {} {files:?}",
                if *same { "identical" } else { "DIFFERS" }
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    verdict(6, "CLI outputs byte-identical across runs", pass, detail);
}

// ---------------------------------------------------------------------------
// 7. PPP statistics
// ---------------------------------------------------------------------------

#[test]
fn c07_ppp_mean_count() {
    let region = Region::square_km2(1.0);
    let reps = 10_000u64;
    let total: usize = (0..reps)
        .map(|seed| generate_ppp(625.0, &region, seed).unwrap().len())
        .sum();
    let mean = total as f64 / reps as f64;
    let sigma = (625.0 / reps as f64).sqrt();
    verdict(
        7,
        "PPP sample mean count within 3 sigma of 625",
        (mean - 625.0).abs() <= 3.0 * sigma,
        format!(
            "mean {mean:.3} over {reps} draws, 3 sigma = {:.3}",
            3.0 * sigma
        ),
    );
}

// ---------------------------------------------------------------------------
// 8-11. Synthetic reproductions
// ---------------------------------------------------------------------------

fn sweep(densities: Vec<f64>, radii: Vec<f64>, node_counts: Option<Vec<usize>>) -> SweepSpec {
    SweepSpec {
        grid: SweepGrid {
            densities,
            radii,
            node_counts,
            replications: 20,
            area_km2: 1.0,
        },
        radio: RadioConfig::default(),
        sim: SimConfig::default(),
        threshold_factor: 1.0,
    }
}

#[test]
fn c08_dense_network_gain() {
    let start = Instant::now();
    let rows = run_synthetic_sweep(&sweep(vec![625.0], vec![150.0], None)).unwrap();
    let p = &summarize_sweep(&rows)[0];
    let elapsed = start.elapsed();
    let gain = p.mean_rate_improvement_pct.unwrap();
    verdict(
        8,
        "dense network (625/km², R_N 150 m) mean rate gain >= 20%",
        gain >= 20.0 && elapsed < Duration::from_secs(300),
        format!(
            "greedy {:.1} Mb/s, DSS {:.1} Mb/s, {gain:+.1}%, {elapsed:.1?}",
            p.greedy_mean_rate_bps / 1e6,
            p.dss_mean_rate_bps / 1e6
        ),
    );
}

#[test]
fn c09_sparse_network_fairness_null() {
    let rows = run_synthetic_sweep(&sweep(vec![25.0], vec![150.0], None)).unwrap();
    let p = &summarize_sweep(&rows)[0];
    let delta = p.fairness_improvement_abs.unwrap();
    verdict(
        9,
        "sparse network (25/km²) fairness change below 0.05",
        delta.abs() < 0.05,
        format!(
            "greedy {:.3}, DSS {:.3}, delta {delta:+.4}",
            p.greedy_fairness.unwrap(),
            p.dss_fairness.unwrap()
        ),
    );
}

#[test]
fn c10_ase_dominance() {
    let spec = sweep(
        vec![25.0, 125.0, 250.0, 375.0, 500.0, 625.0],
        vec![50.0, 100.0, 150.0, 200.0],
        None,
    );
    let points = summarize_sweep(&run_synthetic_sweep(&spec).unwrap());
    let mut failures = Vec::new();
    for p in &points {
        let ok = if p.density_per_km2 >= 375.0 {
            p.dss_ase > p.greedy_ase
        } else {
            p.dss_ase >= p.greedy_ase
        };
        if !ok {
            failures.push(format!("λ {} R_N {}", p.density_per_km2, p.r_n_m));
        }
    }
    let worst = points
        .iter()
        .map(|p| p.ase_improvement_pct.unwrap())
        .fold(f64::INFINITY, f64::min);
    verdict(
        10,
        "DSS ASE >= greedy everywhere, strictly above at 375/km² and up",
        failures.is_empty(),
        format!(
            "{} sweep points, smallest ASE gain {worst:+.2}%, failing {failures:?}",
            points.len()
        ),
    );
}

#[test]
fn c11_scalability_flatness() {
    let spec = sweep(vec![375.0], vec![150.0], Some(vec![100, 200, 400, 800]));
    let points = summarize_sweep(&run_synthetic_sweep(&spec).unwrap());
    let base = &points[0];
    assert_eq!(base.n_target, Some(100));
    let base_fair = base.dss_fairness.unwrap();
    let base_gap = base.dss_mean_rate_bps - base.greedy_mean_rate_bps;
    let mut pass = true;
    let mut detail = Vec::new();
    for p in &points {
        let fair = p.dss_fairness.unwrap();
        let gap = p.dss_mean_rate_bps - p.greedy_mean_rate_bps;
        let gap_change = (gap - base_gap).abs() / base_gap.abs();
        pass &= (fair - base_fair).abs() <= 0.1 && gap_change < 0.25;
        detail.push(format!(
            "N {}: J {fair:.3}, gap {:.1} Mb/s ({:+.1}%)",
            p.n_target.unwrap(),
            gap / 1e6,
            100.0 * (gap - base_gap) / base_gap
        ));
    }
    verdict(
        11,
        "fairness and DSS-greedy gap flat in N",
        pass,
        detail.join("; "),
    );
}

// ---------------------------------------------------------------------------
// 12-14. Real datasets
// ---------------------------------------------------------------------------

fn dataset(var: &str) -> PathBuf {
    match std::env::var_os(var) {
        Some(p) => PathBuf::from(p),
        None => {
            let _ = writeln!(std::io::stderr(), "BLOCKED: {var} is not set");
            panic!("{var} must point to the AP location CSV");
        }
    }
}

fn layout(var: &str) -> CoordMode {
    match std::env::var(var).as_deref() {
        Ok("meters") => CoordMode::Meters,
        _ => CoordMode::LonLat { origin: None },
    }
}

/// S = 10, W = 20 MHz, P_T = 1 W, R = 30 m, R_N = 300 m.
fn city_params() -> (RadioConfig, SimConfig) {
    (
        RadioConfig::default(),
        SimConfig {
            neighborhood_radius_m: 300.0,
            ..SimConfig::default()
        },
    )
}

#[test]
#[ignore = "needs the Glasgow AP dataset in DSS_GLASGOW_CSV"]
fn c12_glasgow_sample_cell() {
    let path = dataset("DSS_GLASGOW_CSV");
    let (radio, sim) = city_params();
    let selection = Selection::CellNearestCount {
        rows: 50,
        cols: 50,
        target: 29,
    };
    let b = run_sample_network(
        &path,
        layout("DSS_GLASGOW_LAYOUT"),
        &selection,
        &radio,
        &sim,
        1.0,
        false,
    )
    .unwrap();
    let (g, d) = b.fairness();
    let (g, d) = (g.unwrap(), d.unwrap());
    let stretch = (g - 0.84).abs() <= 0.05 && (d - 0.92).abs() <= 0.05;
    verdict(
        12,
        "Glasgow sample cell fairness gain >= 0.05",
        d - g >= 0.05,
        format!(
            "{} APs, greedy {g:.3}, DSS {d:.3}, gain {:+.3}; (0.84, 0.92) within 0.05: {stretch}",
            b.nodes.len(),
            d - g
        ),
    );
}

#[test]
#[ignore = "needs the KAUST AP dataset in DSS_KAUST_CSV"]
fn c13_kaust_campus() {
    let path = dataset("DSS_KAUST_CSV");
    let (radio, sim) = city_params();
    let b = run_sample_network(
        &path,
        layout("DSS_KAUST_LAYOUT"),
        &Selection::All,
        &radio,
        &sim,
        1.0,
        false,
    )
    .unwrap();
    let (g, d) = b.fairness();
    let gain = d.unwrap() - g.unwrap();
    let dss = &b.comparison.dss.rate_per_node;
    let greedy = &b.comparison.greedy.rate_per_node;
    let non_negative = dss.iter().zip(greedy).filter(|(d, g)| d >= g).count();
    let n = dss.len();
    verdict(
        13,
        "KAUST fairness gain 0.07 ± 0.05 and majority non-negative",
        (gain - 0.07).abs() <= 0.05 && 2 * non_negative > n,
        format!(
            "{n} APs, fairness {:.3} -> {:.3} ({gain:+.3}), {non_negative}/{n} nodes non-negative",
            g.unwrap(),
            d.unwrap()
        ),
    );
}

#[test]
#[ignore = "needs the Glasgow AP dataset in DSS_GLASGOW_CSV"]
fn c14_glasgow_city_wide() {
    let path = dataset("DSS_GLASGOW_CSV");
    let (radio, sim) = city_params();
    let start = Instant::now();
    let a = run_geo_analysis(
        &path,
        layout("DSS_GLASGOW_LAYOUT"),
        50,
        50,
        &radio,
        &sim,
        1.0,
    )
    .unwrap();
    let elapsed = start.elapsed();
    let avg = a.average_improvement();
    let (rate, ase) = (avg.mean_rate_pct.unwrap(), avg.ase_pct.unwrap());
    let near = (rate - 60.0).abs() <= 20.0 && (ase - 50.0).abs() <= 20.0;
    verdict(
        14,
        "Glasgow 50x50 run under 30 min with positive average gains",
        elapsed < Duration::from_secs(1800) && rate > 0.0 && ase > 0.0,
        format!(
            "{} APs, {elapsed:.1?}, throughput {rate:+.1}%, ASE {ase:+.1}% (within 20 points of 60%/50%: {near})",
            a.node_count
        ),
    );
}

/// Not a criterion: a synthetic stand-in with the city's AP count and area
/// to check the grid analysis scales to it in time.
#[test]
fn city_scale_synthetic_runtime() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("city.csv");
    let side = 972f64.sqrt() * 1000.0;
    let mut rng = rng::stream(14, 0);
    let mut csv = String::from("id,x_m,y_m\n");
    // density falls off away from the centre
    for i in 0..19_124 {
        let r = side * 0.5 * rng.random::<f64>().powf(1.6);
        let t = rng.random_range(0.0..std::f64::consts::TAU);
        csv += &format!(
            "{i},{:.1},{:.1}\n",
            side / 2.0 + r * t.cos(),
            side / 2.0 + r * t.sin()
        );
    }
    fs::write(&path, csv).unwrap();
    let (radio, sim) = city_params();
    let start = Instant::now();
    let a = run_geo_analysis(&path, CoordMode::Meters, 50, 50, &radio, &sim, 1.0).unwrap();
    let elapsed = start.elapsed();
    let avg = a.average_improvement();
    let _ = writeln!(
        std::io::stderr(),
        "synthetic city proxy: {} APs, {} cells, {elapsed:.1?}, throughput {:+.1}%, ASE {:+.1}%",
        a.node_count,
        a.cells.iter().filter(|c| c.node_count > 0).count(),
        avg.mean_rate_pct.unwrap_or(f64::NAN),
        avg.ase_pct.unwrap_or(f64::NAN)
    );
    assert!(elapsed < Duration::from_secs(1800));
}

#[test]
fn thresholds_come_from_greedy_rates() {
    // sanity check on the harness itself: the comparison thresholds equal the
    // greedy rates at factor 1
    let nodes = generate_ppp(125.0, &Region::square_km2(0.25), 1).unwrap();
    let cmp = dss::experiment::compare_schemes(
        &nodes,
        &RadioConfig::default(),
        &SimConfig::default(),
        1.0,
        false,
    )
    .unwrap();
    assert_eq!(
        cmp.thresholds,
        Thresholds::new(cmp.greedy.rate_per_node.clone())
    );
}
