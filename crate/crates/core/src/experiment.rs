//! End-to-end experiment pipelines.
//!
//! Every pipeline runs the same comparison per network: build the
//! interference graph, run greedy, turn greedy rates into thresholds, run
//! DSS, compute metrics for both. Work items are independent and run in
//! parallel; each derives its seeds from the master seed and its position
//! in the work list, and results come back in work-list order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deployment::{
    generate_ppp, generate_uniform, ingest_ap_csv, nearest_neighbor_distances, partition_grid,
    CoordMode, Region,
};
use crate::engine::{run_greedy, thresholds_from_greedy, Simulation, Thresholds, TraceRecord};
use crate::error::{DssError, Result};
use crate::graph::{build_graph, InterferenceGraph};
use crate::metrics::{ccdf_grid, improvement, opt, Improvement, MetricReport};
use crate::model::{
    mean, validate_config, AllocationResult, NodeSet, RadioConfig, Scheme, SimConfig,
};
use crate::rng::child_seed;

/// Number of thresholds in every reported rate CCDF.
pub const CCDF_POINTS: usize = 21;

/// DSS and greedy over one network.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub graph: InterferenceGraph,
    pub greedy: AllocationResult,
    pub thresholds: Thresholds,
    pub dss: AllocationResult,
    pub trace: Vec<TraceRecord>,
}

impl Comparison {
    /// Reports for (greedy, dss) sharing one CCDF threshold grid.
    pub fn reports(&self, area_km2: f64, radio: &RadioConfig) -> (MetricReport, MetricReport) {
        let max = self
            .greedy
            .rate_per_node
            .iter()
            .chain(&self.dss.rate_per_node)
            .fold(0.0f64, |a, &b| a.max(b));
        let grid = ccdf_grid(max, CCDF_POINTS);
        (
            MetricReport::from_result(&self.greedy, area_km2, radio, &grid),
            MetricReport::from_result(&self.dss, area_km2, radio, &grid),
        )
    }
}

/// Greedy, then DSS with thresholds `threshold_factor ×` greedy rates.
pub fn compare_schemes(
    nodes: &NodeSet,
    radio: &RadioConfig,
    sim: &SimConfig,
    threshold_factor: f64,
    trace: bool,
) -> Result<Comparison> {
    let graph = build_graph(nodes, sim.neighborhood_radius_m, radio);
    let greedy = run_greedy(nodes, &graph, radio);
    let thresholds = thresholds_from_greedy(&greedy, threshold_factor);
    let outcome = Simulation::new(nodes, &graph, radio, sim, &thresholds)?
        .with_trace(trace)
        .run();
    Ok(Comparison {
        graph,
        greedy,
        thresholds,
        dss: outcome.result,
        trace: outcome.trace,
    })
}

/// Configuration document shared by every CLI subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub radio: RadioConfig,
    pub sim: SimConfig,
    /// Multiplier applied to greedy rates to form DSS thresholds.
    pub threshold_factor: f64,
    pub sweep: SweepGrid,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            radio: RadioConfig::default(),
            sim: SimConfig::default(),
            threshold_factor: 1.0,
            sweep: SweepGrid::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| DssError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        validate_config(&self.radio, &self.sim)?;
        if !(self.threshold_factor >= 0.0 && self.threshold_factor.is_finite()) {
            return Err(DssError::InvalidSweep(
                "threshold_factor must be a finite value ≥ 0",
            ));
        }
        Ok(())
    }

    pub fn sweep_spec(&self) -> SweepSpec {
        SweepSpec {
            grid: self.sweep.clone(),
            radio: self.radio.clone(),
            sim: self.sim.clone(),
            threshold_factor: self.threshold_factor,
        }
    }
}

/// Axes of a synthetic sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepGrid {
    /// Node densities, per km².
    pub densities: Vec<f64>,
    /// Neighborhood radii, meters.
    pub radii: Vec<f64>,
    /// When set, each point places exactly this many nodes at the given
    /// density instead of drawing a Poisson count over `area_km2`.
    pub node_counts: Option<Vec<usize>>,
    pub replications: usize,
    /// Deployment area in density mode, km².
    pub area_km2: f64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            densities: vec![25.0, 125.0, 250.0, 375.0, 500.0, 625.0],
            radii: vec![50.0, 100.0, 150.0, 200.0],
            node_counts: None,
            replications: 20,
            area_km2: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub grid: SweepGrid,
    pub radio: RadioConfig,
    /// Base simulation config; its `R_N` is replaced by each swept radius and
    /// its seed is the master seed.
    pub sim: SimConfig,
    pub threshold_factor: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let g = &self.grid;
        if g.densities.is_empty() || g.radii.is_empty() {
            return Err(DssError::InvalidSweep(
                "densities and radii must be non-empty",
            ));
        }
        if g.node_counts.as_ref().is_some_and(Vec::is_empty) {
            return Err(DssError::InvalidSweep(
                "node_counts must be non-empty when given",
            ));
        }
        if g.replications == 0 {
            return Err(DssError::InvalidSweep("replications must be ≥ 1"));
        }
        if g.densities.iter().any(|d| !(*d >= 0.0 && d.is_finite())) {
            return Err(DssError::InvalidSweep("densities must be finite and ≥ 0"));
        }
        if g.node_counts.is_none() && !(g.area_km2 > 0.0 && g.area_km2.is_finite()) {
            return Err(DssError::InvalidSweep("area_km2 must be > 0"));
        }
        if g.node_counts.is_some() && g.densities.iter().any(|&d| d <= 0.0) {
            return Err(DssError::InvalidSweep(
                "node-count mode needs positive densities",
            ));
        }
        for &r in &g.radii {
            let sim = SimConfig {
                neighborhood_radius_m: r,
                ..self.sim.clone()
            };
            validate_config(&self.radio, &sim)?;
        }
        Ok(())
    }
}

/// One scheme's outcome at one sweep point and replication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub density_per_km2: f64,
    pub r_n_m: f64,
    pub n_target: Option<usize>,
    pub replication: usize,
    pub scheme: Scheme,
    pub node_count: usize,
    pub area_km2: f64,
    pub converged: bool,
    pub triggers: u64,
    /// `None` when the replication produced no nodes.
    pub report: Option<MetricReport>,
}

struct SweepItem {
    density: f64,
    radius: f64,
    n_target: Option<usize>,
    replication: usize,
    deploy_seed: u64,
    sim_seed: u64,
}

/// Runs every `(density, radius, node count, replication)` combination.
///
/// Deployments depend only on `(density, node count, replication)`, so
/// every radius is evaluated on the same networks.
pub fn run_synthetic_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let g = &spec.grid;
    let counts: Vec<Option<usize>> = match &g.node_counts {
        Some(ns) => ns.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let master = spec.sim.seed;

    let mut items = Vec::new();
    for (di, &density) in g.densities.iter().enumerate() {
        for (ri, &radius) in g.radii.iter().enumerate() {
            for (ni, &n_target) in counts.iter().enumerate() {
                for replication in 0..g.replications {
                    let key = ((di * counts.len() + ni) * g.replications + replication) as u64;
                    let deploy_seed = child_seed(master, key);
                    items.push(SweepItem {
                        density,
                        radius,
                        n_target,
                        replication,
                        deploy_seed,
                        sim_seed: child_seed(deploy_seed, ri as u64 + 1),
                    });
                }
            }
        }
    }

    let rows: Vec<Vec<SweepRow>> = items
        .par_iter()
        .map(|it| sweep_item(spec, it))
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn sweep_item(spec: &SweepSpec, it: &SweepItem) -> Result<Vec<SweepRow>> {
    let (nodes, area_km2) = match it.n_target {
        None => {
            let region = Region::square_km2(spec.grid.area_km2);
            (
                generate_ppp(it.density, &region, it.deploy_seed)?,
                spec.grid.area_km2,
            )
        }
        Some(n) => {
            let area = n as f64 / it.density;
            (
                generate_uniform(n, &Region::square_km2(area), it.deploy_seed)?,
                area,
            )
        }
    };
    let sim = SimConfig {
        neighborhood_radius_m: it.radius,
        seed: it.sim_seed,
        ..spec.sim.clone()
    };
    let row = |scheme, converged, triggers, report| SweepRow {
        density_per_km2: it.density,
        r_n_m: it.radius,
        n_target: it.n_target,
        replication: it.replication,
        scheme,
        node_count: nodes.len(),
        area_km2,
        converged,
        triggers,
        report,
    };
    if nodes.is_empty() {
        return Ok(vec![
            row(Scheme::Dss, true, 0, None),
            row(Scheme::Greedy, true, 0, None),
        ]);
    }
    let cmp = compare_schemes(&nodes, &spec.radio, &sim, spec.threshold_factor, false)?;
    let (greedy, dss) = cmp.reports(area_km2, &spec.radio);
    Ok(vec![
        row(
            Scheme::Dss,
            cmp.dss.converged,
            cmp.dss.triggers_executed,
            Some(dss),
        ),
        row(Scheme::Greedy, true, 0, Some(greedy)),
    ])
}

/// Replication averages at one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPointSummary {
    pub density_per_km2: f64,
    pub r_n_m: f64,
    pub n_target: Option<usize>,
    /// Replications with at least one node.
    pub replications: usize,
    pub converged_fraction: f64,
    pub greedy_mean_rate_bps: f64,
    pub dss_mean_rate_bps: f64,
    pub greedy_fairness: Option<f64>,
    pub dss_fairness: Option<f64>,
    pub greedy_mean_se: f64,
    pub dss_mean_se: f64,
    pub greedy_ase: f64,
    pub dss_ase: f64,
    pub mean_rate_improvement_pct: Option<f64>,
    pub fairness_improvement_abs: Option<f64>,
    pub ase_improvement_pct: Option<f64>,
}

/// Averages sweep rows per `(density, radius, node count)`, in first-seen
/// order.
pub fn summarize_sweep(rows: &[SweepRow]) -> Vec<SweepPointSummary> {
    let mut keys: Vec<(f64, f64, Option<usize>)> = Vec::new();
    for r in rows {
        let k = (r.density_per_km2, r.r_n_m, r.n_target);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(density, radius, n_target)| {
            let at = |scheme: Scheme| -> Vec<&SweepRow> {
                rows.iter()
                    .filter(|r| {
                        r.density_per_km2 == density
                            && r.r_n_m == radius
                            && r.n_target == n_target
                            && r.scheme == scheme
                            && r.report.is_some()
                    })
                    .collect()
            };
            let (d, g) = (at(Scheme::Dss), at(Scheme::Greedy));
            let avg = |rs: &[&SweepRow], f: &dyn Fn(&MetricReport) -> f64| -> f64 {
                mean(
                    &rs.iter()
                        .map(|r| f(r.report.as_ref().unwrap()))
                        .collect::<Vec<_>>(),
                )
            };
            let avg_opt =
                |rs: &[&SweepRow], f: &dyn Fn(&MetricReport) -> Option<f64>| -> Option<f64> {
                    let v: Vec<f64> = rs
                        .iter()
                        .filter_map(|r| f(r.report.as_ref().unwrap()))
                        .collect();
                    (!v.is_empty()).then(|| mean(&v))
                };
            let pct = |a: f64, b: f64| (b != 0.0).then(|| 100.0 * (a - b) / b);

            let dss_rate = avg(&d, &|m| m.mean_rate_bps);
            let greedy_rate = avg(&g, &|m| m.mean_rate_bps);
            let dss_ase = avg(&d, &|m| m.ase_bps_per_hz_per_km2.unwrap_or(0.0));
            let greedy_ase = avg(&g, &|m| m.ase_bps_per_hz_per_km2.unwrap_or(0.0));
            let dss_fair = avg_opt(&d, &|m| m.fairness_index);
            let greedy_fair = avg_opt(&g, &|m| m.fairness_index);
            SweepPointSummary {
                density_per_km2: density,
                r_n_m: radius,
                n_target,
                replications: d.len(),
                converged_fraction: if d.is_empty() {
                    0.0
                } else {
                    d.iter().filter(|r| r.converged).count() as f64 / d.len() as f64
                },
                greedy_mean_rate_bps: greedy_rate,
                dss_mean_rate_bps: dss_rate,
                greedy_fairness: greedy_fair,
                dss_fairness: dss_fair,
                greedy_mean_se: avg(&g, &|m| m.mean_se_bps_per_hz),
                dss_mean_se: avg(&d, &|m| m.mean_se_bps_per_hz),
                greedy_ase,
                dss_ase,
                mean_rate_improvement_pct: pct(dss_rate, greedy_rate),
                fairness_improvement_abs: dss_fair.zip(greedy_fair).map(|(a, b)| a - b),
                ase_improvement_pct: pct(dss_ase, greedy_ase),
            }
        })
        .collect()
}

/// Result of one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRow {
    pub row: usize,
    pub col: usize,
    pub node_count: usize,
    pub area_km2: f64,
    /// `None` below two nodes.
    pub mean_nn_distance_m: Option<f64>,
    pub converged: Option<bool>,
    pub greedy: Option<MetricReport>,
    pub dss: Option<MetricReport>,
    pub improvement: Option<Improvement>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoAnalysis {
    pub dataset: PathBuf,
    pub node_count: usize,
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<CellRow>,
}

impl GeoAnalysis {
    /// Mean of each improvement over cells where it is defined.
    pub fn average_improvement(&self) -> Improvement {
        let avg = |f: &dyn Fn(&Improvement) -> Option<f64>| {
            let v: Vec<f64> = self
                .cells
                .iter()
                .filter_map(|c| c.improvement.as_ref().and_then(f))
                .collect();
            (!v.is_empty()).then(|| mean(&v))
        };
        Improvement {
            mean_rate_pct: avg(&|i| i.mean_rate_pct),
            fairness_pct: avg(&|i| i.fairness_pct),
            fairness_abs: avg(&|i| i.fairness_abs),
            mean_se_pct: avg(&|i| i.mean_se_pct),
            ase_pct: avg(&|i| i.ase_pct),
        }
    }
}

/// Partitions a dataset into `rows × cols` cells and compares DSS with
/// greedy in every non-empty cell, each cell simulated on its own.
pub fn run_geo_analysis(
    dataset: impl AsRef<Path>,
    mode: CoordMode,
    rows: usize,
    cols: usize,
    radio: &RadioConfig,
    sim: &SimConfig,
    threshold_factor: f64,
) -> Result<GeoAnalysis> {
    validate_config(radio, sim)?;
    let dataset = dataset.as_ref();
    let nodes = ingest_ap_csv(dataset, mode)?;
    if rows == 0 || cols == 0 {
        return Err(DssError::InvalidGrid);
    }
    let cells = if nodes.is_empty() {
        Vec::new()
    } else {
        partition_grid(&nodes, rows, cols)?
    };

    let results: Vec<CellRow> = cells
        .par_iter()
        .enumerate()
        .map(|(index, cell)| {
            let members = nodes.subset(&cell.node_ids);
            let area = cell.bounds.area_km2();
            let cell_sim = SimConfig {
                seed: child_seed(sim.seed, index as u64),
                ..sim.clone()
            };
            let mut row = CellRow {
                row: cell.row,
                col: cell.col,
                node_count: members.len(),
                area_km2: area,
                mean_nn_distance_m: mean_nn(&members),
                converged: None,
                greedy: None,
                dss: None,
                improvement: None,
            };
            if !members.is_empty() {
                let cmp = compare_schemes(&members, radio, &cell_sim, threshold_factor, false)?;
                let (g, d) = cmp.reports(area, radio);
                row.converged = Some(cmp.dss.converged);
                row.improvement = Some(improvement(&d, &g));
                row.greedy = Some(g);
                row.dss = Some(d);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    Ok(GeoAnalysis {
        dataset: dataset.to_path_buf(),
        node_count: nodes.len(),
        rows,
        cols,
        cells: results,
    })
}

fn mean_nn(nodes: &NodeSet) -> Option<f64> {
    nearest_neighbor_distances(nodes).ok().map(|d| mean(&d))
}

/// Which nodes of a dataset a sample run covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// The whole dataset, framed by its bounding box.
    All,
    /// One cell of a `rows × cols` partition.
    Cell {
        rows: usize,
        cols: usize,
        row: usize,
        col: usize,
    },
    /// The cell of a `rows × cols` partition whose node count is closest to
    /// `target` (ties to the first cell in row-major order).
    CellNearestCount {
        rows: usize,
        cols: usize,
        target: usize,
    },
    /// Explicit node ids, framed by their bounding box.
    Nodes(Vec<usize>),
}

/// Five-number summary plus mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl BoxStats {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let pos = p * (v.len() - 1) as f64;
            let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Some(Self {
            min: v[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: v[v.len() - 1],
            mean: mean(&v),
        })
    }
}

/// Everything needed to plot one network in detail.
#[derive(Debug, Clone)]
pub struct SampleBundle {
    pub selection: Selection,
    /// Dataset ids of the selected nodes, in sample order.
    pub source_ids: Vec<usize>,
    pub nodes: NodeSet,
    pub area_km2: f64,
    pub mean_nn_distance_m: Option<f64>,
    pub comparison: Comparison,
    pub greedy_report: MetricReport,
    pub dss_report: MetricReport,
    pub improvement: Improvement,
    pub greedy_box: BoxStats,
    pub dss_box: BoxStats,
}

impl SampleBundle {
    /// `(greedy, dss)` Jain fairness.
    pub fn fairness(&self) -> (Option<f64>, Option<f64>) {
        (
            self.greedy_report.fairness_index,
            self.dss_report.fairness_index,
        )
    }
}

/// Detailed DSS-vs-greedy comparison on a selected part of a dataset.
pub fn run_sample_network(
    dataset: impl AsRef<Path>,
    mode: CoordMode,
    selection: &Selection,
    radio: &RadioConfig,
    sim: &SimConfig,
    threshold_factor: f64,
    trace: bool,
) -> Result<SampleBundle> {
    validate_config(radio, sim)?;
    let all = ingest_ap_csv(dataset.as_ref(), mode)?;
    sample_from_nodes(&all, selection, radio, sim, threshold_factor, trace)
}

/// [`run_sample_network`] over an already loaded node set.
pub fn sample_from_nodes(
    all: &NodeSet,
    selection: &Selection,
    radio: &RadioConfig,
    sim: &SimConfig,
    threshold_factor: f64,
    trace: bool,
) -> Result<SampleBundle> {
    let bbox_area = |ids: &[usize]| {
        all.subset(ids)
            .bounding_box()
            .map_or(0.0, |(x0, y0, x1, y1)| (x1 - x0) * (y1 - y0) / 1e6)
    };
    let pick_cell = |rows: usize, cols: usize, index: usize| -> Result<(Vec<usize>, f64, usize)> {
        let cells = partition_grid(all, rows, cols)?;
        let c = &cells[index];
        Ok((c.node_ids.clone(), c.bounds.area_km2(), index))
    };

    let (ids, area_km2, work_index) = match selection {
        Selection::All => {
            let ids: Vec<usize> = (0..all.len()).collect();
            let area = bbox_area(&ids);
            (ids, area, 0)
        }
        Selection::Cell {
            rows,
            cols,
            row,
            col,
        } => {
            if *row >= *rows || *col >= *cols {
                return Err(DssError::EmptySelection);
            }
            pick_cell(*rows, *cols, row * cols + col)?
        }
        Selection::CellNearestCount { rows, cols, target } => {
            let cells = partition_grid(all, *rows, *cols)?;
            let best = cells
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.node_ids.is_empty())
                .min_by_key(|(i, c)| (c.node_ids.len().abs_diff(*target), *i))
                .map(|(i, _)| i)
                .ok_or(DssError::EmptySelection)?;
            pick_cell(*rows, *cols, best)?
        }
        Selection::Nodes(ids) => {
            if let Some(&id) = ids.iter().find(|&&id| id >= all.len()) {
                return Err(DssError::UnknownNode {
                    id,
                    count: all.len(),
                });
            }
            (ids.clone(), bbox_area(ids), 0)
        }
    };
    if ids.is_empty() {
        return Err(DssError::EmptySelection);
    }

    let nodes = all.subset(&ids);
    let sim = SimConfig {
        seed: child_seed(sim.seed, work_index as u64),
        ..sim.clone()
    };
    let comparison = compare_schemes(&nodes, radio, &sim, threshold_factor, trace)?;
    let (greedy_report, dss_report) = comparison.reports(area_km2, radio);
    Ok(SampleBundle {
        selection: selection.clone(),
        source_ids: ids,
        mean_nn_distance_m: mean_nn(&nodes),
        area_km2,
        improvement: improvement(&dss_report, &greedy_report),
        greedy_box: BoxStats::of(&comparison.greedy.rate_per_node).expect("non-empty"),
        dss_box: BoxStats::of(&comparison.dss.rate_per_node).expect("non-empty"),
        greedy_report,
        dss_report,
        comparison,
        nodes,
    })
}

fn create(dir: &Path, name: &str) -> Result<fs::File> {
    let path = dir.join(name);
    fs::File::create(&path).map_err(|e| DssError::io(path, e))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let mut f = create(dir, name)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")
        .map_err(|e| DssError::io(dir.join(name), e))
}

fn io_at(dir: &Path, name: &str) -> impl FnOnce(std::io::Error) -> DssError {
    let path = dir.join(name);
    move |e| DssError::io(path, e)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| DssError::io(dir, e))
}

/// Writes `sweep.csv` and `summary.json`.
pub fn write_sweep_outputs(dir: &Path, spec: &SweepSpec, rows: &[SweepRow]) -> Result<()> {
    ensure_dir(dir)?;
    let mut w = csv::Writer::from_writer(create(dir, "sweep.csv")?);
    w.write_record([
        "density_per_km2",
        "r_n_m",
        "n_target",
        "replication",
        "scheme",
        "node_count",
        "area_km2",
        "converged",
        "triggers",
        "mean_rate_bps",
        "mean_rate_mbps",
        "fairness_index",
        "mean_se_bps_per_hz",
        "ase_bps_per_hz_per_km2",
    ])?;
    for r in rows {
        let m = r.report.as_ref();
        w.write_record([
            r.density_per_km2.to_string(),
            r.r_n_m.to_string(),
            r.n_target.map(|n| n.to_string()).unwrap_or_default(),
            r.replication.to_string(),
            r.scheme.to_string(),
            r.node_count.to_string(),
            r.area_km2.to_string(),
            r.converged.to_string(),
            r.triggers.to_string(),
            opt(m.map(|m| m.mean_rate_bps)),
            opt(m.map(|m| m.mean_rate_bps / 1e6)),
            opt(m.and_then(|m| m.fairness_index)),
            opt(m.map(|m| m.mean_se_bps_per_hz)),
            opt(m.and_then(|m| m.ase_bps_per_hz_per_km2)),
        ])?;
    }
    w.flush().map_err(io_at(dir, "sweep.csv"))?;

    #[derive(Serialize)]
    struct Summary<'a> {
        command: &'static str,
        radio: &'a RadioConfig,
        sim: &'a SimConfig,
        threshold_factor: f64,
        grid: &'a SweepGrid,
        points: Vec<SweepPointSummary>,
    }
    write_json(
        dir,
        "summary.json",
        &Summary {
            command: "sweep",
            radio: &spec.radio,
            sim: &spec.sim,
            threshold_factor: spec.threshold_factor,
            grid: &spec.grid,
            points: summarize_sweep(rows),
        },
    )
}

/// Writes `cells.csv` and `summary.json`.
pub fn write_geo_outputs(
    dir: &Path,
    analysis: &GeoAnalysis,
    radio: &RadioConfig,
    sim: &SimConfig,
) -> Result<()> {
    ensure_dir(dir)?;
    let mut w = csv::Writer::from_writer(create(dir, "cells.csv")?);
    w.write_record([
        "row",
        "col",
        "node_count",
        "area_km2",
        "mean_nn_distance_m",
        "converged",
        "greedy_mean_rate_bps",
        "dss_mean_rate_bps",
        "greedy_mean_rate_mbps",
        "dss_mean_rate_mbps",
        "greedy_fairness",
        "dss_fairness",
        "greedy_mean_se",
        "dss_mean_se",
        "greedy_ase",
        "dss_ase",
        "rate_improvement_pct",
        "fairness_improvement_abs",
        "ase_improvement_pct",
    ])?;
    for c in &analysis.cells {
        let (g, d, i) = (c.greedy.as_ref(), c.dss.as_ref(), c.improvement.as_ref());
        w.write_record([
            c.row.to_string(),
            c.col.to_string(),
            c.node_count.to_string(),
            c.area_km2.to_string(),
            opt(c.mean_nn_distance_m),
            c.converged.map(|b| b.to_string()).unwrap_or_default(),
            opt(g.map(|m| m.mean_rate_bps)),
            opt(d.map(|m| m.mean_rate_bps)),
            opt(g.map(|m| m.mean_rate_bps / 1e6)),
            opt(d.map(|m| m.mean_rate_bps / 1e6)),
            opt(g.and_then(|m| m.fairness_index)),
            opt(d.and_then(|m| m.fairness_index)),
            opt(g.map(|m| m.mean_se_bps_per_hz)),
            opt(d.map(|m| m.mean_se_bps_per_hz)),
            opt(g.and_then(|m| m.ase_bps_per_hz_per_km2)),
            opt(d.and_then(|m| m.ase_bps_per_hz_per_km2)),
            opt(i.and_then(|i| i.mean_rate_pct)),
            opt(i.and_then(|i| i.fairness_abs)),
            opt(i.and_then(|i| i.ase_pct)),
        ])?;
    }
    w.flush().map_err(io_at(dir, "cells.csv"))?;

    #[derive(Serialize)]
    struct Summary<'a> {
        command: &'static str,
        dataset: String,
        radio: &'a RadioConfig,
        sim: &'a SimConfig,
        rows: usize,
        cols: usize,
        node_count: usize,
        cells_with_nodes: usize,
        average_improvement: Improvement,
    }
    write_json(
        dir,
        "summary.json",
        &Summary {
            command: "geo",
            dataset: analysis.dataset.display().to_string(),
            radio,
            sim,
            rows: analysis.rows,
            cols: analysis.cols,
            node_count: analysis.node_count,
            cells_with_nodes: analysis.cells.iter().filter(|c| c.node_count > 0).count(),
            average_improvement: analysis.average_improvement(),
        },
    )
}

/// Writes `sample_rates.csv`, `edges.csv`, `summary.json` and, when the
/// bundle carries one, `trace.csv`.
pub fn write_sample_outputs(
    dir: &Path,
    bundle: &SampleBundle,
    radio: &RadioConfig,
    sim: &SimConfig,
) -> Result<()> {
    ensure_dir(dir)?;
    let cmp = &bundle.comparison;
    let mut w = csv::Writer::from_writer(create(dir, "sample_rates.csv")?);
    w.write_record([
        "node_id",
        "source_id",
        "x_m",
        "y_m",
        "degree",
        "greedy_rate_bps",
        "dss_rate_bps",
        "greedy_rate_mbps",
        "dss_rate_mbps",
        "threshold_bps",
        "improvement_pct",
        "dss_sbos",
    ])?;
    for n in &bundle.nodes {
        let (g, d) = (cmp.greedy.rate_per_node[n.id], cmp.dss.rate_per_node[n.id]);
        w.write_record([
            n.id.to_string(),
            bundle.source_ids[n.id].to_string(),
            n.x.to_string(),
            n.y.to_string(),
            cmp.graph.degree(n.id).to_string(),
            g.to_string(),
            d.to_string(),
            (g / 1e6).to_string(),
            (d / 1e6).to_string(),
            cmp.thresholds.get(n.id).to_string(),
            opt((g != 0.0).then(|| 100.0 * (d - g) / g)),
            cmp.dss.sbos_per_node[n.id].bitstring(),
        ])?;
    }
    w.flush().map_err(io_at(dir, "sample_rates.csv"))?;

    cmp.graph
        .write_edges_csv(create(dir, "edges.csv")?)
        .map_err(io_at(dir, "edges.csv"))?;

    if !cmp.trace.is_empty() {
        crate::engine::write_trace_csv(&cmp.trace, create(dir, "trace.csv")?)
            .map_err(io_at(dir, "trace.csv"))?;
    }

    #[derive(Serialize)]
    struct Summary<'a> {
        command: &'static str,
        selection: &'a Selection,
        radio: &'a RadioConfig,
        sim: &'a SimConfig,
        node_count: usize,
        edge_count: usize,
        area_km2: f64,
        mean_nn_distance_m: Option<f64>,
        converged: bool,
        triggers: u64,
        fairness_greedy: Option<f64>,
        fairness_dss: Option<f64>,
        greedy_box: BoxStats,
        dss_box: BoxStats,
        greedy: &'a MetricReport,
        dss: &'a MetricReport,
        improvement: Improvement,
    }
    let (fg, fd) = bundle.fairness();
    write_json(
        dir,
        "summary.json",
        &Summary {
            command: "sample",
            selection: &bundle.selection,
            radio,
            sim,
            node_count: bundle.nodes.len(),
            edge_count: cmp.graph.edge_count(),
            area_km2: bundle.area_km2,
            mean_nn_distance_m: bundle.mean_nn_distance_m,
            converged: cmp.dss.converged,
            triggers: cmp.dss.triggers_executed,
            fairness_greedy: fg,
            fairness_dss: fd,
            greedy_box: bundle.greedy_box,
            dss_box: bundle.dss_box,
            greedy: &bundle.greedy_report,
            dss: &bundle.dss_report,
            improvement: bundle.improvement,
        },
    )
}
