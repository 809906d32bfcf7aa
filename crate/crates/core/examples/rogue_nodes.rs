// Transmitters that never take part in voting. Their interference is
// sensed by the participating nodes and folded into each node's noise
// floor; the rest of the algorithm is unchanged.

use dss::deployment::{generate_ppp, generate_uniform, Region};
use dss::engine::{run_greedy_with_noise, thresholds_from_greedy, Simulation};
use dss::graph::build_graph;
use dss::metrics::jain_fairness;
use dss::radio::rogue_noise;
use dss::{RadioConfig, SimConfig};

pub fn run_example() -> dss::Result<()> {
    let radio = RadioConfig::default();
    let sim = SimConfig {
        neighborhood_radius_m: 150.0,
        seed: 21,
        ..SimConfig::default()
    };
    let region = Region::square_km2(0.25);
    let nodes = generate_ppp(250.0, &region, 21)?;
    let graph = build_graph(&nodes, sim.neighborhood_radius_m, &radio);

    println!("rogues  greedy Mb/s  dss Mb/s  fairness g/d");
    for count in [0, 5, 20] {
        let rogues: Vec<(f64, f64)> = generate_uniform(count, &region, 99)?.positions().collect();
        let noise = rogue_noise(&nodes, &rogues, radio.tx_power_w, &radio);

        let greedy = run_greedy_with_noise(&nodes, &graph, &radio, noise.clone());
        let thresholds = thresholds_from_greedy(&greedy, 1.0);
        let dss = Simulation::new(&nodes, &graph, &radio, &sim, &thresholds)?
            .with_extra_noise(noise)
            .run()
            .result;
        println!(
            "{count:>6} {:>12.1} {:>9.1}  {:.3}/{:.3}",
            greedy.mean_rate() / 1e6,
            dss.mean_rate() / 1e6,
            jain_fairness(&greedy.rate_per_node)?,
            jain_fairness(&dss.rate_per_node)?,
        );
    }
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
