// Link-budget numbers: clean sub-band capacity, the effect of one
// interferer at growing distance, and the gap between what a node can
// estimate from its neighbors and what it actually gets.

use dss::graph::build_graph;
use dss::radio::{
    clean_band_rate, estimate_qos, node_rate, path_gain, signal_power, sinr, NetworkState, Scope,
};
use dss::{NodeSet, RadioConfig, Sbos};

pub fn run_example() -> dss::Result<()> {
    let radio = RadioConfig::default();
    println!(
        "signal at d_ref = {} m: {:.3e} W",
        radio.d_ref,
        signal_power(&radio)
    );
    println!("noise per sub-band:     {:.3e} W", radio.noise_power());
    println!(
        "clean sub-band rate:    {:.1} Mb/s",
        clean_band_rate(&radio) / 1e6
    );
    println!(
        "all {} sub-bands:        {:.1} Mb/s\n",
        radio.sub_bands,
        radio.sub_bands as f64 * clean_band_rate(&radio) / 1e6
    );

    println!("one co-channel interferer:");
    println!("  distance (m)   gain        SINR (dB)   band rate (Mb/s)");
    for d in [1.0, 10.0, 30.0, 100.0, 300.0, 1000.0] {
        let nodes = NodeSet::from_positions([(0.0, 0.0), (d, 0.0)]);
        let g = build_graph(&nodes, 2000.0, &radio);
        let state = NetworkState::new(&nodes, &g, &radio, vec![Sbos::full(radio.sub_bands); 2]);
        let s = sinr(0, 0, &state, Scope::Global);
        let rate = radio.bandwidth_hz * (1.0 + s).log2();
        println!(
            "  {d:>12} {:>10.3e} {:>11.1} {:>14.1}",
            path_gain(d, &radio),
            10.0 * s.log10(),
            rate / 1e6
        );
    }

    // the far end of a chain is invisible to node 0 at R_N = 150 m
    let nodes = NodeSet::from_positions([(0.0, 0.0), (100.0, 0.0), (200.0, 0.0)]);
    let g = build_graph(&nodes, 150.0, &radio);
    let state = NetworkState::new(&nodes, &g, &radio, vec![Sbos::full(radio.sub_bands); 3]);
    let full = Sbos::full(radio.sub_bands);
    println!(
        "\nchain 0-100-200 m, node 0: estimated {:.1} Mb/s, realized {:.1} Mb/s",
        estimate_qos(0, &full, &state) / 1e6,
        node_rate(0, &full, &state, Scope::Global) / 1e6
    );
    Ok(())
}

fn main() -> dss::Result<()> {
    run_example()
}
