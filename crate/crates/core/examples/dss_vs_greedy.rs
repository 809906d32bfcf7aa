// DSS against the greedy baseline on one dense synthetic deployment.

use dss::deployment::{generate_ppp, Region};
use dss::experiment::compare_schemes;
use dss::metrics::improvement;
use dss::{RadioConfig, SimConfig};

pub fn run_example() -> dss::Result<()> {
    let radio = RadioConfig::default();
    let sim = SimConfig {
        neighborhood_radius_m: 150.0,
        seed: 11,
        ..SimConfig::default()
    };
    let region = Region::square_km2(0.25);
    let nodes = generate_ppp(625.0, &region, 11)?;

    let cmp = compare_schemes(&nodes, &radio, &sim, 1.0, false)?;
    let (greedy, dss) = cmp.reports(region.area_km2(), &radio);
    let imp = improvement(&dss, &greedy);

    println!("{} nodes, {} edges", nodes.len(), cmp.graph.edge_count());
    println!(
        "DSS: {} triggers, converged {}",
        cmp.dss.triggers_executed, cmp.dss.converged
    );
    println!("                  greedy      dss");
    println!(
        "mean rate (Mb/s) {:>7.1} {:>8.1}",
        greedy.mean_rate_bps / 1e6,
        dss.mean_rate_bps / 1e6
    );
    println!(
        "fairness         {:>7.3} {:>8.3}",
        greedy.fairness_index.unwrap_or(0.0),
        dss.fairness_index.unwrap_or(0.0)
    );
    println!(
        "mean SE (b/s/Hz) {:>7.3} {:>8.3}",
        greedy.mean_se_bps_per_hz, dss.mean_se_bps_per_hz
    );
    println!(
        "\nmean rate {:+.1}%, fairness {:+.3}",
        imp.mean_rate_pct.unwrap_or(0.0),
        imp.fairness_abs.unwrap_or(0.0)
    );

    let bands: f64 = cmp
        .dss
        .sbos_per_node
        .iter()
        .map(|b| b.occupied_count() as f64)
        .sum::<f64>()
        / nodes.len() as f64;
    println!(
        "DSS nodes hold {bands:.2} of {} sub-bands on average",
        radio.sub_bands
    );
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
