use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dss::deployment::CoordMode;
use dss::experiment::{
    run_geo_analysis, run_sample_network, run_synthetic_sweep, write_geo_outputs,
    write_sample_outputs, write_sweep_outputs, ExperimentConfig, Selection,
};
use dss::{DssError, Result};

/// Democratic spectrum sharing experiments.
#[derive(Parser)]
#[command(name = "dss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthetic PPP sweep over density, neighborhood radius and node count.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Grid-wise comparison over a dataset of AP locations.
    Geo {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        data: Dataset,
        #[arg(long, default_value_t = 50)]
        rows: usize,
        #[arg(long, default_value_t = 50)]
        cols: usize,
    },
    /// Detailed comparison on one part of a dataset.
    Sample {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        data: Dataset,
        #[arg(long, default_value_t = 1)]
        rows: usize,
        #[arg(long, default_value_t = 1)]
        cols: usize,
        /// Cell of the `rows × cols` partition, as `row,col`.
        #[arg(long, value_parser = parse_cell, conflicts_with_all = ["nearest_count", "nodes"])]
        cell: Option<(usize, usize)>,
        /// Pick the cell whose node count is closest to this.
        #[arg(long, conflicts_with = "nodes")]
        nearest_count: Option<usize>,
        /// Explicit node ids (row order in the dataset, from 0).
        #[arg(long, value_delimiter = ',')]
        nodes: Option<Vec<usize>>,
        /// Also write the per-trigger trace.
        #[arg(long)]
        trace: bool,
    },
    /// Check a configuration file and print it with defaults filled in.
    Validate {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Experiment configuration (JSON). Defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed, overriding the configuration.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct Dataset {
    /// CSV with a header row and columns `id,lon,lat` or `id,x_m,y_m`.
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, value_enum, default_value_t = Layout::Lonlat)]
    layout: Layout,
    /// Projection origin as `lon,lat`; the bounding-box centre otherwise.
    #[arg(long, value_parser = parse_pair)]
    origin: Option<(f64, f64)>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Layout {
    Lonlat,
    Meters,
}

impl Dataset {
    fn mode(&self) -> CoordMode {
        match self.layout {
            Layout::Lonlat => CoordMode::LonLat {
                origin: self.origin,
            },
            Layout::Meters => CoordMode::Meters,
        }
    }
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or("expected two comma-separated numbers")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok((num(a)?, num(b)?))
}

fn parse_cell(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `row,col`")?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((num(a)?, num(b)?))
}

fn load(common_config: Option<&PathBuf>, seed: Option<u64>) -> Result<ExperimentConfig> {
    let mut config = match common_config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = seed {
        config.sim.seed = seed;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep { common } => {
            let spec = load(common.config.as_ref(), common.seed)?.sweep_spec();
            let rows = run_synthetic_sweep(&spec)?;
            write_sweep_outputs(&common.out, &spec, &rows)
        }
        Command::Geo {
            common,
            data,
            rows,
            cols,
        } => {
            let cfg = load(common.config.as_ref(), common.seed)?;
            let analysis = run_geo_analysis(
                &data.dataset,
                data.mode(),
                rows,
                cols,
                &cfg.radio,
                &cfg.sim,
                cfg.threshold_factor,
            )?;
            write_geo_outputs(&common.out, &analysis, &cfg.radio, &cfg.sim)
        }
        Command::Sample {
            common,
            data,
            rows,
            cols,
            cell,
            nearest_count,
            nodes,
            trace,
        } => {
            let cfg = load(common.config.as_ref(), common.seed)?;
            let selection = match (cell, nearest_count, nodes) {
                (Some((row, col)), _, _) => Selection::Cell {
                    rows,
                    cols,
                    row,
                    col,
                },
                (_, Some(target), _) => Selection::CellNearestCount { rows, cols, target },
                (_, _, Some(ids)) => Selection::Nodes(ids),
                _ => Selection::All,
            };
            let bundle = run_sample_network(
                &data.dataset,
                data.mode(),
                &selection,
                &cfg.radio,
                &cfg.sim,
                cfg.threshold_factor,
                trace,
            )?;
            write_sample_outputs(&common.out, &bundle, &cfg.radio, &cfg.sim)
        }
        Command::Validate { config } => {
            let cfg = load(config.as_ref(), None)?;
            println!("{}", serde_json::to_string_pretty(&cfg)?);
            Ok(())
        }
    }
}

fn report(e: &DssError) {
    let mut body = json!({ "error": e.kind(), "message": e.to_string() });
    if let DssError::Config(errors) = e {
        body["violations"] = errors
            .0
            .iter()
            .map(|v| json!({ "field": v.field(), "message": v.to_string() }))
            .collect();
    }
    eprintln!("{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": "usage", "message": e.to_string().trim_end() })
            );
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report(&e);
            ExitCode::FAILURE
        }
    }
}
