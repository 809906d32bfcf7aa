// Grid-wise analysis of a city-like AP dataset given in longitude and
// latitude. The dataset here is synthetic: a few dense clusters over a
// sparse background around a city centre.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use dss::deployment::CoordMode;
use dss::experiment::{run_geo_analysis, write_geo_outputs};
use dss::rng;
use dss::{RadioConfig, SimConfig};
use rand::Rng;
use rand_distr::{Distribution, Normal};

const CENTRE: (f64, f64) = (-4.25, 55.86);

fn write_city(path: &Path, seed: u64) -> std::io::Result<usize> {
    let mut rng = rng::stream(seed, 0);
    let mut f = File::create(path)?;
    writeln!(f, "id,lon,lat")?;
    let mut id = 0;
    let clusters = [
        (-0.02, 0.01, 0.004, 220),
        (0.015, -0.008, 0.003, 160),
        (0.03, 0.02, 0.006, 90),
    ];
    for (dlon, dlat, spread, count) in clusters {
        let lon = Normal::new(CENTRE.0 + dlon, spread * 1.8).expect("positive spread");
        let lat = Normal::new(CENTRE.1 + dlat, spread).expect("positive spread");
        for _ in 0..count {
            writeln!(
                f,
                "{id},{:.6},{:.6}",
                lon.sample(&mut rng),
                lat.sample(&mut rng)
            )?;
            id += 1;
        }
    }
    for _ in 0..80 {
        let lon = CENTRE.0 + rng.random_range(-0.06..0.06);
        let lat = CENTRE.1 + rng.random_range(-0.035..0.035);
        writeln!(f, "{id},{lon:.6},{lat:.6}")?;
        id += 1;
    }
    Ok(id)
}

pub fn run_example() -> dss::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let csv = dir.path().join("city.csv");
    let count = write_city(&csv, 42).expect("write dataset");

    let radio = RadioConfig::default();
    let sim = SimConfig {
        seed: 42,
        ..SimConfig::default()
    };
    let analysis = run_geo_analysis(
        &csv,
        CoordMode::LonLat { origin: None },
        4,
        4,
        &radio,
        &sim,
        1.0,
    )?;
    println!("{count} APs in {} cells\n", analysis.cells.len());

    println!("row col  nodes  area km²  greedy Mb/s  dss Mb/s  fairness g/d");
    for c in analysis.cells.iter().filter(|c| c.node_count > 0) {
        let (g, d) = (
            c.greedy.as_ref().expect("run"),
            c.dss.as_ref().expect("run"),
        );
        println!(
            "{:>3} {:>3} {:>6} {:>9.3} {:>12.1} {:>9.1}  {:.2}/{:.2}",
            c.row,
            c.col,
            c.node_count,
            c.area_km2,
            g.mean_rate_bps / 1e6,
            d.mean_rate_bps / 1e6,
            g.fairness_index.unwrap_or(0.0),
            d.fairness_index.unwrap_or(0.0),
        );
    }
    let avg = analysis.average_improvement();
    println!(
        "\naverage over cells: rate {:+.1}%, ASE {:+.1}%, fairness {:+.3}",
        avg.mean_rate_pct.unwrap_or(0.0),
        avg.ase_pct.unwrap_or(0.0),
        avg.fairness_abs.unwrap_or(0.0)
    );

    let out = dir.path().join("geo");
    write_geo_outputs(&out, &analysis, &radio, &sim)?;
    println!("wrote cells.csv and summary.json");
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
