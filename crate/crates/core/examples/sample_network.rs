// Deep dive into one small cell of a dataset: the cell whose node count is
// closest to 29, run with a 300 m neighborhood radius. Prints per-scheme
// rate distributions and writes the full output bundle.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use dss::deployment::CoordMode;
use dss::experiment::{run_sample_network, write_sample_outputs, Selection};
use dss::rng;
use dss::{RadioConfig, SimConfig};
use rand::Rng;

fn write_dataset(path: &Path, seed: u64) -> std::io::Result<()> {
    // meters layout, density falling off away from the south-west corner
    let mut rng = rng::stream(seed, 0);
    let mut f = File::create(path)?;
    writeln!(f, "id,x_m,y_m")?;
    for id in 0..900 {
        let x: f64 = 4000.0 * rng.random::<f64>().powi(2);
        let y: f64 = 4000.0 * rng.random::<f64>().powi(2);
        writeln!(f, "{id},{x:.1},{y:.1}")?;
    }
    Ok(())
}

pub fn run_example() -> dss::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let csv = dir.path().join("aps.csv");
    write_dataset(&csv, 9).expect("write dataset");

    let radio = RadioConfig::default();
    let sim = SimConfig {
        neighborhood_radius_m: 300.0,
        seed: 9,
        ..SimConfig::default()
    };
    let selection = Selection::CellNearestCount {
        rows: 8,
        cols: 8,
        target: 29,
    };
    let bundle = run_sample_network(&csv, CoordMode::Meters, &selection, &radio, &sim, 1.0, true)?;

    println!(
        "{} nodes on {:.3} km², mean nearest neighbor {:.1} m",
        bundle.nodes.len(),
        bundle.area_km2,
        bundle.mean_nn_distance_m.unwrap_or(0.0)
    );
    for (name, b) in [("greedy", bundle.greedy_box), ("dss", bundle.dss_box)] {
        println!(
            "{name:>6}: min {:>7.1}  q1 {:>7.1}  median {:>7.1}  q3 {:>7.1}  max {:>7.1} Mb/s",
            b.min / 1e6,
            b.q1 / 1e6,
            b.median / 1e6,
            b.q3 / 1e6,
            b.max / 1e6
        );
    }
    let (g, d) = bundle.fairness();
    println!(
        "fairness {:.3} -> {:.3}",
        g.unwrap_or(0.0),
        d.unwrap_or(0.0)
    );

    let per_node: Vec<f64> = bundle
        .comparison
        .dss
        .rate_per_node
        .iter()
        .zip(&bundle.comparison.greedy.rate_per_node)
        .map(|(d, g)| d - g)
        .collect();
    let gainers = per_node.iter().filter(|&&x| x >= 0.0).count();
    println!(
        "{gainers} of {} nodes do at least as well under DSS",
        per_node.len()
    );
    println!("trace: {} triggers recorded", bundle.comparison.trace.len());

    write_sample_outputs(&dir.path().join("sample"), &bundle, &radio, &sim)?;
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
