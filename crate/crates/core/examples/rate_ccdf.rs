// Rate coverage: the fraction of nodes above each rate threshold, greedy
// against DSS, on a moderately dense deployment.

use dss::deployment::{generate_ppp, Region};
use dss::experiment::compare_schemes;
use dss::{RadioConfig, SimConfig};

pub fn run_example() -> dss::Result<()> {
    let radio = RadioConfig::default();
    let sim = SimConfig {
        neighborhood_radius_m: 150.0,
        seed: 3,
        ..SimConfig::default()
    };
    let region = Region::square_km2(0.25);
    let nodes = generate_ppp(375.0, &region, 3)?;
    let cmp = compare_schemes(&nodes, &radio, &sim, 1.0, false)?;
    let (greedy, dss) = cmp.reports(region.area_km2(), &radio);

    println!("rate (Mb/s)   greedy    dss");
    for (g, d) in greedy.ccdf.iter().zip(&dss.ccdf).step_by(2) {
        let bar = |p: f64| "#".repeat((p * 20.0).round() as usize);
        println!(
            "{:>10.1} {:>8.2} {:>6.2}  {:<20}|{}",
            g.threshold_bps / 1e6,
            g.coverage,
            d.coverage,
            bar(g.coverage),
            bar(d.coverage)
        );
    }
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
