// One decision of a hub node with three neighbors over three sub-bands,
// step by step: votes, social decision, then selfish escalation as its
// rate threshold grows.

use dss::engine::decide;
use dss::graph::build_graph;
use dss::radio::{clean_band_rate, NetworkState};
use dss::{NodeSet, RadioConfig, Sbos};

pub fn run_example() -> dss::Result<()> {
    let radio = RadioConfig {
        sub_bands: 3,
        ..RadioConfig::default()
    };
    // hub 0, neighbors 1, 2, 3 at increasing distance
    let nodes = NodeSet::from_positions([(0.0, 0.0), (40.0, 0.0), (0.0, 60.0), (-80.0, 0.0)]);
    let graph = build_graph(&nodes, 150.0, &radio);
    let sbos = vec![
        Sbos::vacant(3),
        Sbos::from_states(&[1, 1, -1]).expect("valid"),
        Sbos::from_states(&[-1, 1, 1]).expect("valid"),
        Sbos::from_states(&[1, -1, -1]).expect("valid"),
    ];
    for (v, b) in sbos.iter().enumerate().skip(1) {
        println!(
            "node {v} at {:>4.0} m holds {:?}",
            graph.neighbors(0)[v - 1].distance,
            b
        );
    }
    let state = NetworkState::new(&nodes, &graph, &radio, sbos);

    let social_rate = decide(0, &state, 0.0).estimated_rate;
    println!(
        "one clean sub-band would carry {:.1} Mb/s",
        clean_band_rate(&radio) / 1e6
    );
    for (label, threshold) in [
        ("no requirement", 0.0),
        ("a little above the social decision", 1.2 * social_rate),
        ("well above the social decision", 1.8 * social_rate),
        ("unattainable", f64::INFINITY),
    ] {
        let d = decide(0, &state, threshold);
        println!("\nthreshold: {label}");
        println!(
            "  votes      {:?}",
            d.votes
                .values()
                .iter()
                .map(|x| format!("{x:+.2e}"))
                .collect::<Vec<_>>()
        );
        println!("  social     {:?}", d.social);
        println!("  escalated  {:?}", d.escalations);
        println!(
            "  final      {:?}  estimate {:.1} Mb/s",
            d.sbos,
            d.estimated_rate / 1e6
        );
    }
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
